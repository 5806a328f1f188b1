"""
Centralizers
============
Component groups of centralizers in the dual group:

    pi0_torus_subset_centralizer   Stab_W(A) / W(Phi_A) for A in the dual torus
    pi0_diagonalizable             torsion of X* / Z.Phi (center of a datum's group)
    s_sharp_steinberg              |S#| for Steinberg-type discrete parameters
    c_nu                           the part of C_chi fixing the W°-orbit of s
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

from .exceptions import IdentityViolation, NotDiscrete, NotSteinbergType
from .parameters import (
    TorusElement,
    connected_centralizer_indices,
    is_discrete,
    principal_sl2_cocharacter,
    steinberg_parameter,
)
from .ramification import InertialDatum, TorsionTorusElement, c_group, conductor_function, phi_chi
from .rootdata import BasedRootDatum, WeylElement, WeylGroup, weyl_group
from .tools.lattice import integer_kernel, lattice_quotient

logger = logging.getLogger(__name__)

TorusPoint = Union[TorsionTorusElement, TorusElement]


@dataclass
class Pi0Description:
    """pi0 of a centralizer: Weyl coset representatives times a torus part."""
    order: int
    weyl_part: List[WeylElement] = field(default_factory=list)
    torus_part_invariants: List[int] = field(default_factory=list)
    free_rank: int = 0

    def __post_init__(self):
        torus = 1
        for d in self.torus_part_invariants:
            torus *= d
        if self.order < 1 or self.order != max(1, len(self.weyl_part)) * torus:
            raise ValueError(
                f"order {self.order} does not match |weyl part| {len(self.weyl_part)} x torus {torus}"
            )

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "weyl_words": [list(w.word) for w in self.weyl_part],
            "torus_invariants": list(self.torus_part_invariants),
            "free_rank": self.free_rank,
        }


def _is_trivial_on(point: TorusPoint, coroot) -> bool:
    value = point.evaluate(coroot)
    return value.is_trivial() if isinstance(point, TorsionTorusElement) else value.is_one()


def _fixed_by(w: WeylElement, point: TorusPoint) -> bool:
    if isinstance(point, TorsionTorusElement):
        return w.act_torsion(point.coords) == point.coords
    return point.act(w.matrix) == point


def connected_centralizer_subsystem(rd: BasedRootDatum, A: Sequence[TorusPoint]) -> List[int]:
    """Root indices of Z(A)°: alpha with alpha^vee(a) = 1 for every a in A."""
    return [
        i for i, coroot in enumerate(rd.coroots)
        if all(_is_trivial_on(a, coroot) for a in A)
    ]


def pi0_torus_subset_centralizer(
    rd: BasedRootDatum,
    A: Sequence[TorusPoint],
    W: Optional[WeylGroup] = None,
) -> Pi0Description:
    """
    pi0(Z(A)) = Stab_W(A) / W(Phi_A), represented by the stabilizer elements
    that preserve Phi_A+.

    Raises:
        SizeLimitExceeded: if W is too large to enumerate
    """
    W = W or weyl_group(rd)
    subset = connected_centralizer_subsystem(rd, A)
    positive_sub = {i for i in subset if rd.positive[i]}

    stab = [w for w in W if all(_fixed_by(w, a) for a in A)]
    reps = [w for w in stab if {w.perm[i] for i in positive_sub} == positive_sub]
    reflection_order = len(W.reflection_subgroup(positive_sub))
    if len(reps) * reflection_order != len(stab):
        raise IdentityViolation(
            "pi0-cosets",
            f"|reps| {len(reps)} x |W(Phi_A)| {reflection_order} != |Stab| {len(stab)}",
        )
    return Pi0Description(order=len(reps), weyl_part=reps)


def pi0_diagonalizable(rd: BasedRootDatum, subsystem: Sequence[int]) -> Pi0Description:
    """
    pi0 of the diagonalizable group with character lattice X* / Z.(subsystem
    roots), i.e. of the center of the group of the subsystem datum. Pass
    dual_datum(rd) to get centers on the dual side.
    """
    torsion, free = lattice_quotient(rd.rank, [rd.roots[i] for i in subsystem])
    order = 1
    for d in torsion:
        order *= d
    return Pi0Description(order=order, torus_part_invariants=torsion, free_rank=free)


# =============================================================================
# S# FOR STEINBERG-TYPE PARAMETERS
# =============================================================================

def c_nu(
    rd: BasedRootDatum,
    S: InertialDatum,
    s: TorusElement,
    W: Optional[WeylGroup] = None,
) -> List[WeylElement]:
    """C_nu = {c in C_chi : c(s) in W°_chi . s}."""
    W = W or weyl_group(rd)
    result = c_group(rd, S, W)
    orbit = {w_s.coords for w_s in (s.act(w.matrix) for w in result.reflection_subgroup)}
    return [c for c in result.c_chi if s.act(c.matrix).coords in orbit]


def _derived_s_sharp(
    rd: BasedRootDatum,
    A: Sequence[TorusPoint],
    W: WeylGroup,
) -> Pi0Description:
    """
    pi0 of Z(phi) in G^vee_der for a Steinberg-type phi with semisimple part A:
    torsion of X_* / (X_0 + Z.Phi_A^vee) times Stab_W(A) / W(Phi_A).
    """
    x0 = integer_kernel(rd.roots, rd.rank)
    subset = connected_centralizer_subsystem(rd, A)
    torsion, free = lattice_quotient(rd.rank, list(x0) + [rd.coroots[i] for i in subset])
    if free:
        raise NotDiscrete(f"Z(phi)° has a torus of rank {free} in the derived dual")
    weyl = pi0_torus_subset_centralizer(rd, A, W)
    order = weyl.order
    for d in torsion:
        order *= d
    return Pi0Description(order=order, weyl_part=weyl.weyl_part, torus_part_invariants=torsion)


@dataclass
class SSharpResult:
    """|S#_phi| together with the factors |S#_phi'| and |C_nu| <= |C_chi|."""
    s_sharp: Pi0Description
    s_sharp_prime: Pi0Description
    c_chi_order: int
    c_nu_order: int

    @property
    def order(self) -> int:
        return self.s_sharp.order

    @property
    def literal_factorization_holds(self) -> bool:
        """|S#_phi| = |S#_phi'| * |C_chi|; true whenever C_nu = C_chi."""
        return self.s_sharp.order == self.s_sharp_prime.order * self.c_chi_order

    def to_dict(self) -> dict:
        return {
            "S_sharp": self.s_sharp.to_dict(),
            "S_sharp_prime": self.s_sharp_prime.to_dict(),
            "C_chi_order": self.c_chi_order,
            "C_nu_order": self.c_nu_order,
        }


def s_sharp_steinberg(
    rd: BasedRootDatum,
    S: InertialDatum,
    s: Optional[TorusElement] = None,
    h: Optional[Sequence[int]] = None,
    W: Optional[WeylGroup] = None,
) -> SSharpResult:
    """
    |S#_phi| for the Steinberg-type parameter of (S, s), computed in the
    derived dual, and the same for phi' on the H° side.

    Raises:
        NotSteinbergType: if h is given and is not principal in Z(S u {s})°
        NotDiscrete: if the parameter is not discrete
        IdentityViolation: if |S#_phi| != |S#_phi'| * |C_nu|
    """
    W = W or weyl_group(rd)
    s = s or TorusElement.identity(rd.rank)
    principal = principal_sl2_cocharacter(rd, connected_centralizer_indices(rd, S, s))
    if h is not None and tuple(int(x) for x in h) != principal:
        raise NotSteinbergType(f"h={list(h)} is not principal (expected {list(principal)})")
    if not is_discrete(steinberg_parameter(rd, S, s)):
        raise NotDiscrete("Steinberg-type parameter is not discrete")

    A: List[TorusPoint] = list(S.generators) + [s]
    full = _derived_s_sharp(rd, A, W)

    subset, h_datum = phi_chi(rd, conductor_function(rd, S))
    W_h = W.memoized(("subsystem", tuple(subset)), lambda: weyl_group(h_datum))
    prime = _derived_s_sharp(h_datum, [s], W_h)

    c_chi_order = c_group(rd, S, W).order
    c_nu_order = len(c_nu(rd, S, s, W))
    if full.order != prime.order * c_nu_order:
        raise IdentityViolation(
            "s-sharp-factorization",
            f"|S#| = {full.order} but |S#'| * |C_nu| = {prime.order} * {c_nu_order}",
        )
    logger.debug("S# = %d = %d * |C_nu| %d (|C_chi| = %d)", full.order, prime.order, c_nu_order, c_chi_order)
    return SSharpResult(full, prime, c_chi_order, c_nu_order)
