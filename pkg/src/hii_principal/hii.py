"""
HII Right-Hand Side
===================
Assembles (dim rho / |S#|)^2 * |gamma(0, Ad o phi, psi)|^2 for a block and
verifies the chain of exact identities that reduces the principal series
case to the unramified one:

    (i)   vol(I_H) / vol(J_chi) = |eps_ram|
    (ii)  |gamma_G(0)|^2 = |eps_ram|^2 * |gamma_H(0)|^2
    (iii) |S#_phi| = |S#_phi'| * |C_chi|
    (iv)  both assembled right-hand sides coincide

verify_suite runs the same identities over seeded random inertial data.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from .centralizers import (
    SSharpResult,
    connected_centralizer_subsystem,
    pi0_torus_subset_centralizer,
    s_sharp_steinberg,
)
from .config import get_settings
from .exceptions import (
    HiiError,
    IdentityViolation,
    InvalidBlock,
    MissingEnhancement,
    NotDiscrete,
    NotSteinbergType,
    SizeLimitExceeded,
)
from .parameters import (
    Parameter,
    TorusElement,
    central_dimension,
    gamma_abs_squared_at_zero,
    gamma_abs_squared_uniform,
    gamma_ramified_abs_squared,
    gamma_unramified_abs_squared,
    is_discrete,
    is_steinberg_type,
    steinberg_parameter,
)
from .ramification import (
    CGroupResult,
    ConductorData,
    InertialDatum,
    c_group,
    concavity_violations,
    conductor_function,
    displayed_formula_divergences,
    phi_chi,
    random_inertial_datum,
    regenerate,
    roche_f,
)
from .rootdata import (
    BasedRootDatum,
    WeylGroup,
    center_is_connected,
    construct_root_datum,
    weyl_group,
)
from .tools.inputs import optional_positive_int, parse_levels, parse_monomial, parse_q, parse_vector
from .tools.metrics import FAILED, FLAGGED, PASSED, SKIPPED, SuiteTracker, TrialOutcome
from .tools.scalars import Scalar, render_decimal
from .volumes import VolumeReport, volume_ratio_and_epsilon

logger = logging.getLogger(__name__)

REPORT_HEADER = (
    "Measures: vol(I) = q^-(|Phi+| + l) (q - 1)^l. Formal degrees are meaningful "
    "only relative to this normalization; the enhancement dimension is taken as "
    "given and is not checked against a geometric construction."
)


# =============================================================================
# BLOCK INPUT
# =============================================================================

@dataclass
class BlockInput:
    """A datum, an inertial datum and a parameter in that block."""
    datum: BasedRootDatum
    inertial: InertialDatum
    q: Fraction
    s: Optional[TorusElement] = None
    h: Optional[Tuple[int, ...]] = None
    steinberg: bool = True
    dim_rho: Optional[int] = None
    s_sharp: Optional[int] = None
    c_nu_order: Optional[int] = None
    dim_rho_nu: Optional[int] = None
    name: str = ""

    @property
    def has_overrides(self) -> bool:
        return any(v is not None for v in (self.dim_rho, self.s_sharp, self.c_nu_order, self.dim_rho_nu))

    def parameter(self) -> Parameter:
        if self.steinberg:
            return steinberg_parameter(self.datum, self.inertial, self.s, self.q)
        s = self.s or TorusElement.identity(self.datum.rank)
        return Parameter(self.datum, self.inertial, s, self.h, self.q)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], default_q: Optional[Fraction] = None) -> "BlockInput":
        """
        Build a block from its JSON form.

        Raises:
            InvalidBlock: if a field is missing or malformed
        """
        if "datum" not in data:
            raise InvalidBlock("block needs a 'datum' field")
        datum = construct_root_datum(data["datum"], data.get("lattice", "sc"))
        rank = datum.rank
        inertial = InertialDatum.from_levels(rank, parse_levels(data.get("inertial"), rank))
        q = parse_q(data.get("q"), default_q or get_settings().default_q)

        raw = data.get("parameter", "steinberg")
        s, h, steinberg = None, None, True
        if isinstance(raw, dict):
            if raw.get("s") is not None:
                s = TorusElement(tuple(parse_monomial(x) for x in parse_vector(raw["s"], rank, "s")))
            if raw.get("h") is not None:
                h = tuple(int(x) for x in parse_vector(raw["h"], rank, "h"))
            steinberg = bool(raw.get("steinberg", h is None))
        elif raw != "steinberg":
            raise InvalidBlock(f"parameter must be 'steinberg' or an object, got {raw!r}")
        if not steinberg and h is None:
            raise InvalidBlock("a non-Steinberg parameter needs 'h'")

        return cls(
            datum=datum,
            inertial=inertial,
            q=q,
            s=s,
            h=h,
            steinberg=steinberg,
            dim_rho=optional_positive_int(data, "dim_rho"),
            s_sharp=optional_positive_int(data, "s_sharp"),
            c_nu_order=optional_positive_int(data, "c_nu_order"),
            dim_rho_nu=optional_positive_int(data, "dim_rho_nu"),
            name=str(data.get("name", "")),
        )


# =============================================================================
# HII REPORT
# =============================================================================

def conductor_table(rd: BasedRootDatum, S: InertialDatum) -> List[Dict[str, Any]]:
    c = conductor_function(rd, S)
    f = roche_f(c)
    return [
        {"root": list(rd.roots[i]), "coroot": list(rd.coroots[i]), "positive": rd.positive[i],
         "c": c[i], "f": f[i]}
        for i in range(len(rd.roots))
    ]


@dataclass
class HiiReport:
    """Everything that enters the right-hand side for one block."""
    datum: str
    conductors: List[Dict[str, Any]]
    phi_chi: List[int]
    h_datum: str
    c_chi_order: int
    volumes: VolumeReport
    strands: List[Dict[str, Any]]
    gamma_abs_squared: Scalar
    s_sharp: int
    dim_rho: int
    rhs_squared: Scalar
    steinberg_type: bool
    checks: Dict[str, bool] = field(default_factory=dict)
    flags: Dict[str, Any] = field(default_factory=dict)
    s_sharp_detail: Optional[SSharpResult] = None
    header: str = REPORT_HEADER

    @property
    def rhs_squared_decimal(self) -> str:
        return render_decimal(self.rhs_squared)

    def to_dict(self) -> dict:
        return {
            "header": self.header,
            "datum": self.datum,
            "conductors": self.conductors,
            "phi_chi": self.phi_chi,
            "H_datum": self.h_datum,
            "C_chi_order": self.c_chi_order,
            "volumes": self.volumes.to_dict(),
            "strands": self.strands,
            "gamma_abs_squared": str(self.gamma_abs_squared),
            "S_sharp": self.s_sharp,
            "dim_rho": self.dim_rho,
            "rhs_squared": str(self.rhs_squared),
            "rhs_squared_decimal": self.rhs_squared_decimal,
            "steinberg_type": self.steinberg_type,
            "checks": dict(self.checks),
            "flags": dict(self.flags),
            "S_sharp_detail": self.s_sharp_detail.to_dict() if self.s_sharp_detail else None,
        }


def _enhancement(b: BlockInput, cg: CGroupResult) -> Tuple[int, int]:
    """(|S#|, dim rho) from the overrides of a non-Steinberg block."""
    if b.s_sharp is None:
        raise MissingEnhancement("non-Steinberg-type parameter needs an s_sharp override")
    if b.dim_rho is not None:
        return b.s_sharp, b.dim_rho
    if b.dim_rho_nu is None or b.c_nu_order is None:
        raise MissingEnhancement("give dim_rho, or dim_rho_nu together with c_nu_order")
    if cg.order % b.c_nu_order:
        raise InvalidBlock(f"c_nu_order {b.c_nu_order} does not divide |C_chi| = {cg.order}")
    return b.s_sharp, (cg.order // b.c_nu_order) * b.dim_rho_nu


def hii_rhs(b: BlockInput, W: Optional[WeylGroup] = None) -> HiiReport:
    """
    (dim rho / |S#|)^2 * |gamma(0)|^2 together with the data it is built from.

    Raises:
        NotDiscrete: if the parameter is not discrete
        PoleFlag: if gamma(0) is not finite and nonzero
        MissingEnhancement: if a non-Steinberg block has no overrides
        InvalidBlock: if a Steinberg block carries overrides
    """
    rd, S = b.datum, b.inertial
    W = W or weyl_group(rd)
    c = conductor_function(rd, S)
    subset, h_datum = phi_chi(rd, c)
    cg = c_group(rd, S, W)
    volumes = volume_ratio_and_epsilon(rd, S, b.q, c)

    p = b.parameter()
    if not is_discrete(p):
        raise NotDiscrete(f"parameter {p.to_dict()} is not discrete")
    wd = p.adjoint.modulo_center(central_dimension(rd))
    gamma_sq = gamma_abs_squared_at_zero(wd)

    steinberg = is_steinberg_type(p)
    detail = None
    if steinberg:
        if b.has_overrides:
            raise InvalidBlock("overrides are only accepted for non-Steinberg-type parameters")
        detail = s_sharp_steinberg(rd, S, p.s, p.h, W)
        s_sharp = detail.order
        dim_rho = cg.order // detail.c_nu_order
    else:
        s_sharp, dim_rho = _enhancement(b, cg)

    if gamma_abs_squared_uniform(wd) != gamma_sq:
        raise IdentityViolation("gamma-additivity", "per-summand |gamma|^2 differs from the assembled value")

    rhs_sq = gamma_sq * Fraction(dim_rho, s_sharp) ** 2
    checks = {"volume-ratio": True, "gamma-additivity": True}
    if detail is not None:
        checks["s-sharp-literal"] = detail.literal_factorization_holds
    flags = {
        "displayed_f_divergences": displayed_formula_divergences(c),
        "concavity_violations": len(concavity_violations(rd, c)),
    }
    logger.info("rhs^2 = %s for %s", rhs_sq, rd)
    return HiiReport(
        datum=str(rd),
        conductors=conductor_table(rd, S),
        phi_chi=subset,
        h_datum=str(h_datum),
        c_chi_order=cg.order,
        volumes=volumes,
        strands=wd.strand_table(),
        gamma_abs_squared=gamma_sq,
        s_sharp=s_sharp,
        dim_rho=dim_rho,
        rhs_squared=rhs_sq,
        steinberg_type=steinberg,
        checks=checks,
        flags=flags,
        s_sharp_detail=detail,
    )


# =============================================================================
# THEOREM CHAIN
# =============================================================================

VERIFIED = "verified"
NO_DISCRETE = "no-discrete-parameters"
NOT_DISCRETE = "not-discrete"
C_NU_PROPER = "c-nu-proper"


@dataclass
class ChainReport:
    """Outcome of the four-clause check for one block."""
    outcome: str
    clauses: Dict[str, bool] = field(default_factory=dict)
    values: Dict[str, str] = field(default_factory=dict)
    c_chi_order: int = 1
    c_nu_order: int = 1

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "clauses": dict(self.clauses),
            "values": dict(self.values),
            "C_chi_order": self.c_chi_order,
            "C_nu_order": self.c_nu_order,
        }


def theorem_chain_check(b: BlockInput, W: Optional[WeylGroup] = None) -> ChainReport:
    """
    Check clauses (i)-(iv) exactly for a Steinberg-type block.

    Blocks whose H° has a larger central torus than G have no discrete
    parameters and are reported as such. When C_nu is a proper subgroup of
    C_chi, clause (iii) is checked with C_nu and clause (iv) is not evaluated.

    Raises:
        NotSteinbergType: if the block's parameter is not of Steinberg type
        IdentityViolation: naming the failing clause
    """
    rd, S, q = b.datum, b.inertial, b.q
    p = b.parameter()
    if not is_steinberg_type(p):
        raise NotSteinbergType("theorem_chain_check needs a Steinberg-type parameter")

    c = conductor_function(rd, S)
    _, h_datum = phi_chi(rd, c)
    if central_dimension(h_datum) > central_dimension(rd):
        return ChainReport(NO_DISCRETE)
    if not is_discrete(p):
        return ChainReport(NOT_DISCRETE)

    W = W or weyl_group(rd)
    cg = c_group(rd, S, W)
    report = ChainReport(VERIFIED, c_chi_order=cg.order)

    try:
        volumes = volume_ratio_and_epsilon(rd, S, q, c)
    except IdentityViolation as e:
        raise IdentityViolation("i", e.detail) from e
    report.clauses["i"] = True
    report.values["volume_ratio"] = str(volumes.ratio)

    central = central_dimension(rd)
    wd_g = p.adjoint.modulo_center(central)
    p_h = Parameter(h_datum, InertialDatum.unramified(rd.rank), p.s, p.h, q)
    wd_h = p_h.adjoint.modulo_center(central)
    gamma_g = gamma_abs_squared_at_zero(wd_g)
    gamma_h = gamma_abs_squared_at_zero(wd_h)
    eps_sq = volumes.epsilon_ram ** 2
    if gamma_g != eps_sq * gamma_h:
        raise IdentityViolation("ii", f"|gamma_G|^2 = {gamma_g} but |eps|^2 |gamma_H|^2 = {eps_sq * gamma_h}")
    if wd_g.sorted_strands() != wd_h.sorted_strands():
        raise IdentityViolation("ii", "strand tables of G and H° differ")
    report.clauses["ii"] = True
    report.values["gamma_G_squared"] = str(gamma_g)
    report.values["gamma_H_squared"] = str(gamma_h)

    try:
        ss = s_sharp_steinberg(rd, S, p.s, p.h, W)
    except IdentityViolation as e:
        raise IdentityViolation("iii", e.detail) from e
    report.c_nu_order = ss.c_nu_order
    report.values["S_sharp"] = str(ss.order)
    report.values["S_sharp_prime"] = str(ss.s_sharp_prime.order)
    if ss.c_nu_order != cg.order:
        report.outcome = C_NU_PROPER
        report.clauses["iii"] = True
        logger.info("C_nu (%d) is proper in C_chi (%d); clause (iv) not evaluated", ss.c_nu_order, cg.order)
        return report
    if not ss.literal_factorization_holds:
        raise IdentityViolation("iii", f"|S#| = {ss.order}, |S#'| * |C_chi| = {ss.s_sharp_prime.order * cg.order}")
    report.clauses["iii"] = True

    dim_rho_nu = 1
    dim_rho = (cg.order // ss.c_nu_order) * dim_rho_nu
    h_side = volumes.ratio ** 2 * Fraction(dim_rho_nu, ss.c_nu_order * ss.s_sharp_prime.order) ** 2 * gamma_h
    g_side = gamma_g * Fraction(dim_rho, ss.order) ** 2
    if h_side != g_side:
        raise IdentityViolation("iv", f"H side {h_side} != G side {g_side}")
    report.clauses["iv"] = True
    report.values["rhs_squared"] = str(g_side)
    return report


# =============================================================================
# RANDOMIZED SWEEP
# =============================================================================

@dataclass
class VerifyOptions:
    """Options of a verify run."""
    max_rank: int = 2
    lattices: Tuple[str, ...] = ("sc", "ad")
    trials: int = 50
    seed: int = 7
    p: int = 7
    q: Fraction = Fraction(3)
    workers: int = 1
    types: Optional[Tuple[str, ...]] = None

    def to_dict(self) -> dict:
        return {
            "max_rank": self.max_rank,
            "lattices": list(self.lattices),
            "trials": self.trials,
            "seed": self.seed,
            "p": self.p,
            "q": str(self.q),
            "types": list(self.types) if self.types else None,
        }


def named_types(max_rank: int) -> List[str]:
    """Irreducible Cartan types of rank <= max_rank, plus A1xA1 from rank 2."""
    out = []
    for n in range(1, max_rank + 1):
        out.append(f"A{n}")
        if n >= 2:
            out += [f"B{n}", f"C{n}"]
        if n >= 4:
            out.append(f"D{n}")
        if n == 2:
            out += ["G2", "A1xA1"]
        if n == 4:
            out.append("F4")
        if n in (6, 7, 8):
            out.append(f"E{n}")
    return out


def classify_concavity(rd: BasedRootDatum, c: ConductorData) -> Optional[Tuple[str, str]]:
    """
    None when f_chi is concave, otherwise a FLAGGED outcome naming the first
    violating triple and the conductors. Realizable characters can violate
    concavity, so this is never a failure.
    """
    violations = concavity_violations(rd, c)
    if not violations:
        return None
    i, j, k = violations[0]
    return FLAGGED, (
        f"{len(violations)} triples, first {rd.roots[i]} + {rd.roots[j]} = {rd.roots[k]} "
        f"with c = {list(c.values)}"
    )


def _run_trial(
    rd: BasedRootDatum,
    W: WeylGroup,
    label: str,
    lattice: str,
    i: int,
    options: VerifyOptions,
) -> List[TrialOutcome]:
    """All identities on one seeded random inertial datum."""
    rng = random.Random(f"{options.seed}:{label}:{lattice}:{i}")
    S = random_inertial_datum(rd.rank, rng, options.p)
    outcomes: List[TrialOutcome] = []

    def check(identity: str, fn: Callable[[], Optional[Tuple[str, str]]]):
        try:
            status, detail = fn() or (PASSED, "")
        except IdentityViolation as e:
            status, detail = FAILED, str(e)
        except HiiError as e:
            status, detail = FAILED, f"{type(e).__name__}: {e}"
        outcomes.append(TrialOutcome(identity, status, label, lattice, i, detail, {"inertial": S.to_dict()}))

    c = conductor_function(rd, S)
    subset, _ = phi_chi(rd, c)

    def f_complement():
        f = roche_f(c)
        bad = [k for k in range(len(rd.roots)) if f[k] + f[rd.negative_of(k)] != c[k]]
        return (FAILED, f"roots {bad}") if bad else None

    def concavity():
        return classify_concavity(rd, c)

    def displayed_f():
        divergent = displayed_formula_divergences(c)
        return (FLAGGED, f"roots {divergent}") if divergent else None

    def volume_ratio():
        volume_ratio_and_epsilon(rd, S, options.q, c)

    def c_chi():
        cg = c_group(rd, S, W)
        if not cg.is_abelian(W):
            return FAILED, "C_chi is not abelian"
        if center_is_connected(rd) and cg.order != 1:
            return FAILED, f"center is connected but |C_chi| = {cg.order}"
        return None

    def dual_identification():
        if connected_centralizer_subsystem(rd, S.generators) != subset:
            return FAILED, "centralizer subsystem differs from Phi_chi"
        cg = c_group(rd, S, W)
        order = pi0_torus_subset_centralizer(rd, S.generators, W).order
        if order != cg.order:
            return FAILED, f"pi0 order {order} != |C_chi| {cg.order}"
        return None

    def regeneration():
        S2 = regenerate(S, rng)
        if connected_centralizer_subsystem(rd, S2.generators) != subset:
            return FAILED, "regenerated S changes Phi_chi"
        before = pi0_torus_subset_centralizer(rd, S.generators, W).order
        after = pi0_torus_subset_centralizer(rd, S2.generators, W).order
        return (FAILED, f"pi0 order {before} -> {after}") if before != after else None

    def gamma_additivity():
        param = steinberg_parameter(rd, S, q=options.q)
        if not is_discrete(param):
            return SKIPPED, "not discrete"
        wd = param.adjoint.modulo_center(central_dimension(rd))
        split = gamma_ramified_abs_squared(wd) * gamma_unramified_abs_squared(wd)
        if gamma_abs_squared_uniform(wd) != split:
            return FAILED, "uniform |gamma|^2 differs from ramified x unramified"
        return None

    def chain():
        block = BlockInput(rd, S, options.q)
        report = theorem_chain_check(block, W)
        if report.outcome in (NO_DISCRETE, NOT_DISCRETE):
            return SKIPPED, report.outcome
        if report.outcome == C_NU_PROPER:
            return FLAGGED, f"|C_nu| = {report.c_nu_order} < |C_chi| = {report.c_chi_order}"
        return None

    check("conductor-f", f_complement)
    check("concavity", concavity)
    check("displayed-f", displayed_f)
    check("volume-ratio", volume_ratio)
    check("c-chi", c_chi)
    check("dual-identification", dual_identification)
    check("regeneration", regeneration)
    check("gamma-additivity", gamma_additivity)
    check("theorem-chain", chain)
    return outcomes


def verify_suite(options: Optional[VerifyOptions] = None) -> SuiteTracker:
    """
    Run every registered identity on seeded random inertial data.

    Trials may run on a thread pool; results are collected in trial order so
    the summary is identical to a sequential run.
    """
    options = options or VerifyOptions()
    tracker = SuiteTracker(options.to_dict())
    if options.trials <= 0:
        tracker.finalize()
        return tracker

    for label in options.types or named_types(options.max_rank):
        for lattice in options.lattices:
            try:
                rd = construct_root_datum(label, lattice)
                W = weyl_group(rd)
            except SizeLimitExceeded as e:
                logger.warning("Skipping %s (%s): %s", label, lattice, e)
                continue
            tracker.add_datum(f"{label}/{lattice}")

            def run(i: int) -> List[TrialOutcome]:
                return _run_trial(rd, W, label, lattice, i, options)

            if options.workers > 1:
                with ThreadPoolExecutor(max_workers=options.workers) as pool:
                    results = list(pool.map(run, range(options.trials)))
            else:
                results = [run(i) for i in range(options.trials)]
            for outcomes in results:
                tracker.record_trial(outcomes)
            logger.debug("%s/%s: %d trials", label, lattice, options.trials)

    tracker.finalize()
    return tracker
