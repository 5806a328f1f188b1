"""
Input Parsing
=============
Readers for the JSON block and parameter files accepted by the CLI.

    {"datum": "C2", "lattice": "sc",
     "inertial": {"levels": [[["1/2", "1/2"]], []]},
     "parameter": "steinberg" | {"s": ["1", "e(1/2)", "q^(1/2)"], "h": [2, 0]},
     "q": "3"}

Monomials are written the way they print: "1", "e(1/3)", "q^(1/2)",
"e(1/4)*q^(-1)", or as {"zeta": "1/4", "qhalf": "-1"} where qhalf is the
half-integer exponent of q.
"""

import json
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

from ..exceptions import InvalidBlock
from .scalars import Monomial

logger = logging.getLogger(__name__)

_ZETA = re.compile(r"^e\(([-+]?\d+(?:/\d+)?)\)$")
_QPOW = re.compile(r"^q(?:\^\(?([-+]?\d+(?:/\d+)?)\)?)?$")


def parse_fraction(value: Union[str, int, Fraction], what: str = "value") -> Fraction:
    """'a/b', an int or a Fraction."""
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidBlock(f"{what}: cannot read {value!r} as a rational number") from e


def parse_q(value: Any, default: Fraction) -> Fraction:
    q = default if value is None else parse_fraction(value, "q")
    if q <= 1:
        raise InvalidBlock(f"q must be > 1, got {q}")
    return q


def _twice_exponent(exponent: Fraction, value: Any) -> int:
    twice = 2 * exponent
    if twice.denominator != 1:
        raise InvalidBlock(f"q-exponent in {value!r} must be a half-integer, got {exponent}")
    return int(twice)


def parse_monomial(value: Union[str, int, Dict[str, Any]]) -> Monomial:
    """
    Read a Monomial zeta * q^(k/2) from its printed form or a dict. In the
    dict form "qhalf" is the exponent k/2 itself, e.g. "1/2" or "-3/2".
    """
    if isinstance(value, dict):
        exponent = parse_fraction(value.get("qhalf", 0), "qhalf")
        return Monomial(_twice_exponent(exponent, value), parse_fraction(value.get("zeta", 0), "zeta"))
    text = str(value).replace(" ", "")
    if text in ("1", ""):
        return Monomial()
    if text == "-1":
        return Monomial(0, Fraction(1, 2))

    qhalf, zeta = 0, Fraction(0)
    for factor in text.split("*"):
        m = _ZETA.match(factor)
        if m:
            zeta += Fraction(m.group(1))
            continue
        m = _QPOW.match(factor)
        if m:
            exponent = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            qhalf += _twice_exponent(exponent, value)
            continue
        raise InvalidBlock(f"cannot read monomial factor {factor!r} in {value!r}")
    return Monomial(qhalf, zeta)


def parse_vector(values: Sequence, rank: int, what: str) -> tuple:
    if not isinstance(values, (list, tuple)) or len(values) != rank:
        raise InvalidBlock(f"{what} must be a list of length {rank}")
    return tuple(values)


def parse_levels(data: Any, rank: int) -> list:
    """Filtration levels as lists of coordinate lists of Fractions."""
    if data is None:
        return [[]]
    levels = data.get("levels") if isinstance(data, dict) else data
    if not isinstance(levels, list):
        raise InvalidBlock("inertial datum must be a list of levels or {'levels': [...]}")
    out = []
    for j, level in enumerate(levels):
        if not isinstance(level, list):
            raise InvalidBlock(f"level {j} must be a list of generators")
        out.append([
            [parse_fraction(x, f"level {j} coordinate") for x in parse_vector(g, rank, f"generator in level {j}")]
            for g in level
        ])
    return out


def load_json(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a JSON object from disk."""
    path = Path(path)
    try:
        with open(path) as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise InvalidBlock(f"no such file: {path}") from e
    except json.JSONDecodeError as e:
        raise InvalidBlock(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e
    if not isinstance(data, dict):
        raise InvalidBlock(f"{path}: expected a JSON object")
    logger.debug("Loaded %s with keys %s", path, sorted(data))
    return data


def optional_positive_int(data: Dict[str, Any], key: str) -> Optional[int]:
    if data.get(key) is None:
        return None
    value = data[key]
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InvalidBlock(f"{key} must be a positive integer, got {value!r}")
    return value
