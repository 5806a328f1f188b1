"""
Volumes
=======
Exact volumes of the Iwahori subgroups of G and H°, the index [I : J_chi],
the transfer factor vol(I_H)/vol(J_chi) and its comparison with the
absolute value of the ramified epsilon factor.

The reductive quotient of an Iwahori subgroup is the split torus, so
vol(I) = q^-(|Phi+| + l) * (q - 1)^l for a datum of rank l.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Union

from .exceptions import FormulaMismatch, IdentityViolation
from .ramification import (
    ConductorData,
    InertialDatum,
    artin_conductor_ramified,
    conductor_function,
    phi_chi,
    roche_f,
)
from .rootdata import BasedRootDatum
from .tools.scalars import Scalar

logger = logging.getLogger(__name__)

QValue = Union[int, Fraction]


def q_formula(q_exponent: int, torus_rank: int = 0) -> str:
    """Render q^e * (q-1)^l, e.g. 'q^-2*(q-1)'."""
    parts = []
    if q_exponent:
        parts.append("q" if q_exponent == 1 else f"q^{q_exponent}")
    if torus_rank:
        parts.append("(q-1)" if torus_rank == 1 else f"(q-1)^{torus_rank}")
    return "*".join(parts) or "1"


def iwahori_exponent(rd: BasedRootDatum) -> int:
    """(dim G + l)/2 = |Phi+| + l."""
    twice = rd.dimension + rd.rank
    assert twice % 2 == 0
    return twice // 2


def vol_iwahori(rd: BasedRootDatum, q: QValue) -> Scalar:
    """q^-(|Phi+| + l) * (q - 1)^l."""
    q = Fraction(q)
    return Scalar.rational(q ** (-iwahori_exponent(rd)) * (q - 1) ** rd.rank, q)


def vol_iwahori_formula(rd: BasedRootDatum) -> str:
    return q_formula(-iwahori_exponent(rd), rd.rank)


def index_I_over_J(c: ConductorData, q: QValue) -> Scalar:
    """
    [I : J_chi] = q^(sum over Phi+ of c_alpha), cross-checked against
    q^(sum over Phi of f_chi).

    Raises:
        FormulaMismatch: if the two exponents differ
    """
    by_c = c.positive_sum()
    by_f = sum(roche_f(c))
    if by_c != by_f:
        raise FormulaMismatch(f"sum_Phi+ c = {by_c} but sum_Phi f = {by_f}")
    return Scalar.q_power(2 * by_c, q)


@dataclass
class VolumeReport:
    """Volumes and the transfer factor for one block."""
    q: Fraction
    vol_I: Scalar
    vol_I_H: Scalar
    vol_J: Scalar
    ratio: Scalar
    index_exponent: int
    index_I_over_J: Scalar
    artin_conductor: int
    epsilon_ram: Scalar
    formulas: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "q": str(self.q),
            "vol_I": str(self.vol_I),
            "vol_I_H": str(self.vol_I_H),
            "vol_J": str(self.vol_J),
            "index_I_over_J": str(self.index_I_over_J),
            "ratio": str(self.ratio),
            "artin_conductor": self.artin_conductor,
            "epsilon_ram": str(self.epsilon_ram),
            "formulas": dict(self.formulas),
        }


def volume_ratio_and_epsilon(
    rd: BasedRootDatum,
    S: InertialDatum,
    q: QValue,
    c: Optional[ConductorData] = None,
) -> VolumeReport:
    """
    Compute vol(I_H)/vol(J_chi) and q^(a/2) and require them to agree.

    Raises:
        IdentityViolation: if ratio != |eps_ram|, or if the dimension count
            dim G - dim H = 2 #{alpha in Phi+ : c_alpha != 0} fails
    """
    q = Fraction(q)
    c = c or conductor_function(rd, S)
    _, h_datum = phi_chi(rd, c)

    vol_I = vol_iwahori(rd, q)
    vol_I_H = vol_iwahori(h_datum, q)
    index = index_I_over_J(c, q)
    vol_J = vol_I / index
    ratio = vol_I_H / vol_J

    a = artin_conductor_ramified(c)
    epsilon = Scalar.q_power(a, q)

    ramified_positive = sum(1 for v, p in zip(c.values, c.positive) if p and v)
    if rd.dimension - h_datum.dimension != 2 * ramified_positive:
        raise IdentityViolation(
            "dimension-count",
            f"dim G - dim H = {rd.dimension - h_datum.dimension}, 2 #ramified Phi+ = {2 * ramified_positive}",
        )
    if vol_J * index != vol_I:
        raise IdentityViolation("vol-J-index", "vol(J) * [I:J] != vol(I)")
    if ratio != epsilon:
        raise IdentityViolation("volume-ratio", f"vol(I_H)/vol(J) = {ratio} but |eps_ram| = {epsilon}")

    sum_c = c.positive_sum()
    formulas = {
        "vol_I": vol_iwahori_formula(rd),
        "vol_I_H": vol_iwahori_formula(h_datum),
        "vol_J": q_formula(-iwahori_exponent(rd) - sum_c, rd.rank),
        "index_I_over_J": q_formula(sum_c),
        "ratio": q_formula(ramified_positive + sum_c),
        "epsilon_ram": f"q^({a}/2)",
    }
    logger.debug("Volume ratio q^%d = eps_ram q^(%d/2)", ramified_positive + sum_c, a)
    return VolumeReport(
        q=q,
        vol_I=vol_I,
        vol_I_H=vol_I_H,
        vol_J=vol_J,
        ratio=ratio,
        index_exponent=sum_c,
        index_I_over_J=index,
        artin_conductor=a,
        epsilon_ram=epsilon,
        formulas=formulas,
    )
