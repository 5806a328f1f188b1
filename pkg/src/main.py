#!/usr/bin/env python3
"""
HII Principal Series - Main Runner
==================================
Exact HII right-hand sides and identity checks for principal series blocks.

Usage:
    python src/main.py analyze blocks/sp4_quadratic.json
    python src/main.py gamma blocks/pgl2_steinberg.json
    python src/main.py hii-rhs blocks/pgl2_steinberg.json --chain
    python src/main.py verify --max-rank 2 --lattices sc,ad --trials 50 --seed 7
    python src/main.py list-types
    python src/main.py condition blocks/sp4_quadratic.json --p 2

Exit codes: 0 on success, 1 if an identity fails, 2 on any other error.
"""

import argparse
import json
import logging
import sys
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

# Add src to path for imports
src_path = Path(__file__).parent
sys.path.insert(0, str(src_path))
sys.path.insert(0, str(src_path.parent))

try:
    from hii_principal.config import configure_logging, get_settings
    from hii_principal.exceptions import HiiError, IdentityViolation, InvalidBlock, PoleFlag
    from hii_principal.hii import (
        REPORT_HEADER,
        BlockInput,
        VerifyOptions,
        hii_rhs,
        named_types,
        theorem_chain_check,
        verify_suite,
    )
    from hii_principal.parameters import central_dimension, gamma_abs_squared_at_zero, is_discrete
    from hii_principal.ramification import c_group, concavity_violations, conductor_function, displayed_formula_divergences, phi_chi
    from hii_principal.rootdata import condition_check, construct_root_datum, weyl_group
    from hii_principal.tools.inputs import load_json
    from hii_principal.tools.scalars import render_decimal
    from hii_principal.volumes import volume_ratio_and_epsilon
except ImportError:
    from src.hii_principal.config import configure_logging, get_settings
    from src.hii_principal.exceptions import HiiError, IdentityViolation, InvalidBlock, PoleFlag
    from src.hii_principal.hii import (
        REPORT_HEADER,
        BlockInput,
        VerifyOptions,
        hii_rhs,
        named_types,
        theorem_chain_check,
        verify_suite,
    )
    from src.hii_principal.parameters import central_dimension, gamma_abs_squared_at_zero, is_discrete
    from src.hii_principal.ramification import c_group, concavity_violations, conductor_function, displayed_formula_divergences, phi_chi
    from src.hii_principal.rootdata import condition_check, construct_root_datum, weyl_group
    from src.hii_principal.tools.inputs import load_json
    from src.hii_principal.tools.scalars import render_decimal
    from src.hii_principal.volumes import volume_ratio_and_epsilon

logger = logging.getLogger("hii_principal.cli")

TYPE_NOTES = {
    "A": "A<n>, n >= 1",
    "B": "B<n>, n >= 2",
    "C": "C<n>, n >= 2 (sc uses Bourbaki eps-coordinates)",
    "D": "D<n>, n >= 4",
    "E": "E6, E7, E8",
    "F": "F4",
    "G": "G2",
    "GL": "GL<n> (standard realization, lattice ignored)",
    "T": "T<n> (split torus)",
    "x": "products such as A1xB2",
}


def _block_from_param_file(data: Dict[str, Any], default_q: Fraction) -> BlockInput:
    """Parameter files carry s and h at top level."""
    data = dict(data)
    if "parameter" not in data and ("s" in data or "h" in data):
        data["parameter"] = {"s": data.get("s"), "h": data.get("h"), "steinberg": data.get("h") is None}
    return BlockInput.from_dict(data, default_q)


class HiiRunner:
    """Runs one CLI subcommand and renders its report."""

    def __init__(self, json_output: bool = False, save: bool = False):
        self.settings = get_settings()
        self.json_output = json_output
        self.save = save
        self.results_dir = Path(self.settings.results_dir)

    def _emit(self, kind: str, payload: Dict[str, Any], printer=None):
        if self.json_output or printer is None:
            print(json.dumps(payload, indent=2, default=str))
        else:
            printer(payload)
        if self.save:
            self.results_dir.mkdir(parents=True, exist_ok=True)
            result_file = self.results_dir / f"{kind}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"
            with open(result_file, "w") as f:
                json.dump(payload, f, indent=2, default=str)
            print(f"\n💾 Results saved to: {result_file}")

    # -- subcommands -------------------------------------------------------------

    def analyze(self, path: str) -> int:
        b = BlockInput.from_dict(load_json(path), self.settings.default_q)
        rd, S = b.datum, b.inertial
        W = weyl_group(rd, self.settings.max_weyl_order)
        c = conductor_function(rd, S)
        subset, h_datum = phi_chi(rd, c)
        cg = c_group(rd, S, W)
        volumes = volume_ratio_and_epsilon(rd, S, b.q, c)
        payload = {
            "datum": str(rd),
            "conductors": [
                {"root": list(rd.roots[i]), "positive": rd.positive[i], "c": c[i]} for i in range(len(rd.roots))
            ],
            "phi_chi": subset,
            "H_datum": str(h_datum),
            "W_chi": cg.to_dict(),
            "volumes": volumes.to_dict(),
            "displayed_f_divergences": displayed_formula_divergences(c),
            "concavity_violations": len(concavity_violations(rd, c)),
        }

        def show(p):
            print("\n" + "=" * 60)
            print(f"🔍 BLOCK ANALYSIS: {p['datum']}")
            print("=" * 60)
            print(f"\n📐 CONDUCTORS:")
            for row in p["conductors"]:
                sign = "+" if row["positive"] else "-"
                print(f"   {sign} {row['root']}: c = {row['c']}")
            print(f"\n🧩 H°: {p['H_datum']} ({len(p['phi_chi'])} roots)")
            print(f"   |W(chi)| = {p['W_chi']['W_chi_order']}, |W°| = {p['W_chi']['W0_order']}, "
                  f"|C_chi| = {p['W_chi']['C_chi_order']}")
            print(f"\n📏 VOLUMES (q = {p['volumes']['q']}):")
            for key, formula in p["volumes"]["formulas"].items():
                print(f"   {key}: {formula} = {p['volumes'][key]}")
            if p["displayed_f_divergences"]:
                print(f"\n⚠️ min{{1, .}} variant of f differs on roots {p['displayed_f_divergences']}")
            if p["concavity_violations"]:
                print(f"⚠️ f is not concave ({p['concavity_violations']} triples)")
            print("=" * 60)

        self._emit("analyze", payload, show)
        return 0

    def gamma(self, path: str) -> int:
        b = _block_from_param_file(load_json(path), self.settings.default_q)
        p = b.parameter()
        wd = p.adjoint
        payload: Dict[str, Any] = {"parameter": p.to_dict(), "wd": wd.to_dict(), "discrete": is_discrete(p)}
        try:
            value = gamma_abs_squared_at_zero(wd.modulo_center(central_dimension(b.datum)) if payload["discrete"] else wd)
            payload["gamma_abs_squared"] = str(value)
            payload["gamma_abs_squared_decimal"] = render_decimal(value)
        except PoleFlag as e:
            payload["gamma_abs_squared"] = None
            payload["flag"] = str(e)

        def show(d):
            print("\n" + "=" * 60)
            print(f"📈 ADJOINT GAMMA FACTOR at s = 0 (q = {d['wd']['q']})")
            print("=" * 60)
            print(f"\n🔀 RAMIFIED LINES: {len(d['wd']['ramified_lines'])}")
            for line in d["wd"]["ramified_lines"]:
                print(f"   root {line['root']}: c = {line['c']}, Frob = {line['frobenius']}")
            print(f"\n🧵 STRANDS:")
            for row in d["wd"]["strands"]:
                print(f"   mu = {row['mu']}, m = {row['m']} (dim {row['dim']})")
            print(f"\n🎯 Discrete: {d['discrete']}")
            if d.get("gamma_abs_squared") is not None:
                print(f"   |gamma(0)|^2 = {d['gamma_abs_squared']} ~ {d['gamma_abs_squared_decimal']}")
            else:
                print(f"   ⚠️ {d['flag']}")
            print("=" * 60)

        self._emit("gamma", payload, show)
        return 0

    def hii_rhs(self, path: str, chain: bool = False) -> int:
        b = BlockInput.from_dict(load_json(path), self.settings.default_q)
        W = weyl_group(b.datum, self.settings.max_weyl_order)
        report = hii_rhs(b, W)
        payload = report.to_dict()
        if chain:
            payload["chain"] = theorem_chain_check(b, W).to_dict()

        def show(d):
            print("\n" + "=" * 60)
            print(f"📊 HII RIGHT-HAND SIDE: {d['datum']}")
            print("=" * 60)
            print(f"ℹ️ {d['header']}")
            print(f"\n🧩 H°: {d['H_datum']}, |C_chi| = {d['C_chi_order']}")
            print(f"📏 vol(I_H)/vol(J) = {d['volumes']['ratio']} = |eps_ram| ({d['volumes']['formulas']['ratio']})")
            print(f"\n🧵 STRANDS:")
            for row in d["strands"]:
                print(f"   mu = {row['mu']}, m = {row['m']}")
            print(f"\n🎯 RESULT:")
            print(f"   |gamma(0)|^2 = {d['gamma_abs_squared']}")
            print(f"   |S#| = {d['S_sharp']}, dim rho = {d['dim_rho']}")
            print(f"   rhs^2 = {d['rhs_squared']} ~ {d['rhs_squared_decimal']}")
            print(f"\n✓ CHECKS:")
            for name, ok in d["checks"].items():
                print(f"   {'✓' if ok else '✗'} {name}")
            if "chain" in d:
                print(f"\n🔗 CHAIN: {d['chain']['outcome']}")
                for clause, ok in d["chain"]["clauses"].items():
                    print(f"   {'✓' if ok else '✗'} ({clause})")
            print("=" * 60)

        self._emit("hii_rhs", payload, show)
        return 0

    def verify(self, options: VerifyOptions) -> int:
        tracker = verify_suite(options)
        if self.json_output:
            print(tracker.to_json())
        else:
            tracker.print_summary()
        if self.save:
            self._emit("verify", tracker.to_dict(), printer=lambda _: None)
        return 0 if tracker.suite_metrics.all_passed else 1

    def list_types(self, max_rank: int) -> int:
        payload = {"types": named_types(max_rank), "forms": TYPE_NOTES, "lattices": ["sc", "ad", "explicit basis"]}

        def show(d):
            print("\n📋 Named types:")
            print("=" * 60)
            for key, note in d["forms"].items():
                print(f"  {note}")
            print(f"\n  Swept by verify (rank <= {max_rank}): {', '.join(d['types'])}")
            print(f"  Lattices: {', '.join(d['lattices'])}")

        self._emit("types", payload, show)
        return 0

    def condition(self, path: str, p: int) -> int:
        data = load_json(path)
        if "datum" not in data:
            raise InvalidBlock(f"{path}: missing 'datum'")
        rd = construct_root_datum(data["datum"], data.get("lattice", "sc"))
        report = condition_check(rd, p)
        payload = report.to_dict()

        def show(d):
            print(f"\n🔍 Residue characteristic p = {d['p']} for {rd}")
            print(f"   Factors: {', '.join(d['factors'])}")
            if d["excluded"]:
                print(f"   Excluded primes: {d['excluded']}")
            print(f"🎯 Verdict: {d['verdict']}")

        self._emit("condition", payload, show)
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="HII formal degree right-hand sides for principal series blocks",
        epilog=REPORT_HEADER,
    )
    parser.add_argument("--json", action="store_true", help="Machine-readable JSON output")
    parser.add_argument("--save", action="store_true", help="Also write the report to HII_RESULTS_DIR")
    parser.add_argument("--log-level", default=None, help="Logging level (default from HII_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Conductors, H°, C_chi and volumes of a block")
    p.add_argument("block")

    p = sub.add_parser("gamma", help="Adjoint WD decomposition and |gamma(0)|^2 of a parameter")
    p.add_argument("param")

    p = sub.add_parser("hii-rhs", help="HII right-hand side of a block")
    p.add_argument("block")
    p.add_argument("--chain", action="store_true", help="Also run the four-clause theorem chain")

    p = sub.add_parser("verify", help="Randomized sweep over all registered identities")
    p.add_argument("--max-rank", type=int, default=2)
    p.add_argument("--lattices", default="sc,ad")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--p", type=int, default=7, help="Residue characteristic used for wild levels")
    p.add_argument("--q", default=None, help="q for volumes and gamma (default HII_DEFAULT_Q)")
    p.add_argument("--types", default=None, help="Comma-separated types instead of the full sweep")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("list-types", help="Supported Cartan types and lattices")
    p.add_argument("--max-rank", type=int, default=3)

    p = sub.add_parser("condition", help="Residue characteristic condition for a datum")
    p.add_argument("datum")
    p.add_argument("--p", type=int, required=True)
    return parser


def run(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    configure_logging(args.log_level or settings.log_level)
    runner = HiiRunner(json_output=args.json, save=args.save)

    try:
        if args.command == "analyze":
            return runner.analyze(args.block)
        if args.command == "gamma":
            return runner.gamma(args.param)
        if args.command == "hii-rhs":
            return runner.hii_rhs(args.block, chain=args.chain)
        if args.command == "verify":
            options = VerifyOptions(
                max_rank=args.max_rank,
                lattices=tuple(x.strip() for x in args.lattices.split(",") if x.strip()),
                trials=args.trials,
                seed=args.seed,
                p=args.p,
                q=Fraction(args.q) if args.q else settings.default_q,
                workers=args.workers or settings.verify_workers,
                types=tuple(args.types.split(",")) if args.types else None,
            )
            return runner.verify(options)
        if args.command == "list-types":
            return runner.list_types(args.max_rank)
        if args.command == "condition":
            return runner.condition(args.datum, args.p)
    except IdentityViolation as e:
        print(f"❌ Identity violated: {e}", file=sys.stderr)
        return 1
    except HiiError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2
    return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
