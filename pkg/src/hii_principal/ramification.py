"""
Ramification Data
=================
The image of inertia is modelled as a decreasing filtration
S(0) >= S(1) >= ... >= S(m) = 1 of finite subgroups of torsion points of
the dual torus, i.e. of X*(T) (x) Q/Z. From it we derive:

    conductor_function   c_alpha for every root
    roche_f              the function f_chi (floor on Phi+, ceil on Phi-)
    phi_chi              Phi_chi = {c_alpha = 0} and the datum of H°
    weyl_stabilizer      W(chi), the pointwise stabilizer of S(0)
    c_group              C_chi and the certified split W(chi) = W° x| C_chi
    artin_conductor_ramified
"""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .exceptions import DecompositionFailure, InvalidInertialDatum, NotClosed
from .rootdata import (
    BasedRootDatum,
    WeylElement,
    WeylGroup,
    dual_datum,
    is_closed_subsystem,
    pairing,
    subsystem_datum,
    weyl_group,
)
from .tools.scalars import TorsionValue

logger = logging.getLogger(__name__)


# =============================================================================
# TORSION POINTS AND FILTRATIONS
# =============================================================================

@dataclass(frozen=True)
class TorsionTorusElement:
    """A torsion point of the dual torus: coordinates in X* (x) Q/Z."""
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) % 1 for c in self.coords))

    @classmethod
    def trivial(cls, rank: int) -> "TorsionTorusElement":
        return cls(tuple(Fraction(0) for _ in range(rank)))

    def evaluate(self, cocharacter: Sequence[int]) -> TorsionValue:
        """Value of a cocharacter lambda in X_*: sum(lambda_i * coords_i) mod 1."""
        return TorsionValue(sum((int(l) * c for l, c in zip(cocharacter, self.coords)), Fraction(0)))

    def __add__(self, other: "TorsionTorusElement") -> "TorsionTorusElement":
        return TorsionTorusElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, k: int) -> "TorsionTorusElement":
        return TorsionTorusElement(tuple(k * a for a in self.coords))

    def is_trivial(self) -> bool:
        return not any(self.coords)

    @property
    def order(self) -> int:
        out = 1
        for c in self.coords:
            out = out * c.denominator // gcd(out, c.denominator)
        return out

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def generated_group(generators: Sequence[TorsionTorusElement], rank: int) -> FrozenSet[Tuple[Fraction, ...]]:
    """Exhaustive enumeration of the finite group generated by torsion points."""
    zero = TorsionTorusElement.trivial(rank)
    seen = {zero.coords}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = x + g
            if y.coords not in seen:
                seen.add(y.coords)
                queue.append(y)
    return frozenset(seen)


@dataclass(frozen=True)
class InertialDatum:
    """
    Filtration S(0) >= S(1) >= ... >= S(m) = 1 given by generator lists.

    A nontrivial final level is closed off with an extra trivial level.
    """
    rank: int
    levels: Tuple[Tuple[TorsionTorusElement, ...], ...]

    def __post_init__(self):
        levels = [tuple(g for g in level) for level in self.levels]
        for level in levels:
            for g in level:
                if len(g.coords) != self.rank:
                    raise InvalidInertialDatum(f"generator {g} does not have length {self.rank}")
        if not levels:
            levels = [()]
        if any(not g.is_trivial() for g in levels[-1]):
            logger.debug("Appending a trivial level to close the filtration")
            levels.append(())
        groups = [generated_group(level, self.rank) for level in levels]
        for j in range(len(groups) - 1):
            if not groups[j + 1] <= groups[j]:
                raise InvalidInertialDatum(f"level {j + 1} is not contained in level {j}")
        object.__setattr__(self, "levels", tuple(levels))

    @classmethod
    def unramified(cls, rank: int) -> "InertialDatum":
        return cls(rank, ((),))

    @classmethod
    def from_levels(cls, rank: int, levels: Sequence[Sequence[Sequence]]) -> "InertialDatum":
        return cls(rank, tuple(
            tuple(TorsionTorusElement(tuple(Fraction(x) for x in g)) for g in level)
            for level in levels
        ))

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def generators(self) -> Tuple[TorsionTorusElement, ...]:
        """Generators of S(0)."""
        return self.levels[0]

    def group(self, level: int = 0) -> FrozenSet[Tuple[Fraction, ...]]:
        return generated_group(self.levels[level], self.rank)

    def is_unramified(self) -> bool:
        return all(g.is_trivial() for g in self.generators)

    def to_dict(self) -> dict:
        return {"levels": [[[str(c) for c in g.coords] for g in level] for level in self.levels]}


# =============================================================================
# CONDUCTORS AND f_chi
# =============================================================================

@dataclass(frozen=True)
class ConductorData:
    """c_alpha per root index, with the positivity flags of the datum."""
    values: Tuple[int, ...]
    positive: Tuple[bool, ...]

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def is_unramified(self) -> bool:
        return not any(self.values)

    def positive_sum(self) -> int:
        return sum(c for c, p in zip(self.values, self.positive) if p)

    def ramified_indices(self) -> List[int]:
        return [i for i, c in enumerate(self.values) if c]


def conductor_function(rd: BasedRootDatum, S: InertialDatum) -> ConductorData:
    """
    c_alpha = 0 if alpha^vee kills S(0), else 1 + the deepest level on which
    alpha^vee is nontrivial.
    """
    if S.rank != rd.rank:
        raise InvalidInertialDatum(f"inertial datum has rank {S.rank}, datum has rank {rd.rank}")
    values = []
    for coroot in rd.coroots:
        c = 0
        for j in range(len(S.levels) - 1, -1, -1):
            if any(not g.evaluate(coroot).is_trivial() for g in S.levels[j]):
                c = j + 1
                break
        values.append(c)
    return ConductorData(tuple(values), rd.positive)


def roche_f(c: ConductorData) -> Tuple[int, ...]:
    """f(alpha) = floor(c/2) on positive roots, ceil(c/2) on negative roots."""
    return tuple(v // 2 if p else (v + 1) // 2 for v, p in zip(c.values, c.positive))


def displayed_f(c_alpha: int, positive: bool) -> int:
    """Variant with min{1, floor((c+1)/2)} on negative roots, kept for comparison."""
    return c_alpha // 2 if positive else min(1, (c_alpha + 1) // 2)


def displayed_formula_divergences(c: ConductorData) -> List[int]:
    """Root indices where the min{1, .} variant differs from roche_f (first at c = 3)."""
    f = roche_f(c)
    return [
        i for i, (v, p) in enumerate(zip(c.values, c.positive))
        if displayed_f(v, p) != f[i]
    ]


def concavity_violations(rd: BasedRootDatum, c: ConductorData) -> List[Tuple[int, int, int]]:
    """Triples (a, b, a+b) of root indices with f(a) + f(b) < f(a+b)."""
    f = roche_f(c)
    out = []
    for i, a in enumerate(rd.roots):
        for j, b in enumerate(rd.roots):
            k = rd.root_index(tuple(x + y for x, y in zip(a, b)))
            if k is not None and f[i] + f[j] < f[k]:
                out.append((i, j, k))
    return out


def artin_conductor_ramified(c: ConductorData) -> int:
    """a = sum over all roots with c_alpha != 0 of (c_alpha + 1)."""
    return sum(v + 1 for v in c.values if v)


# =============================================================================
# Phi_chi, W(chi), C_chi
# =============================================================================

def phi_chi(rd: BasedRootDatum, c: ConductorData) -> Tuple[List[int], BasedRootDatum]:
    """
    Phi_chi = {alpha : c_alpha = 0} and the based datum Psi_chi of H°.

    Closedness is checked for the coroots inside the dual system, which is
    where the kernel description makes it automatic.

    Raises:
        NotClosed: if the subset is not closed in the dual system
    """
    subset = [i for i, v in enumerate(c.values) if v == 0]
    if not is_closed_subsystem(dual_datum(rd), subset):
        raise NotClosed("Phi_chi is not closed in the dual root system")
    h_datum = subsystem_datum(rd, subset, name=f"H°({rd.name})")
    return subset, h_datum


def _fixes(w: WeylElement, generators: Sequence[TorsionTorusElement]) -> bool:
    return all(w.act_torsion(g.coords) == g.coords for g in generators)


def weyl_stabilizer(rd: BasedRootDatum, S: InertialDatum, W: Optional[WeylGroup] = None) -> List[WeylElement]:
    """W(chi): elements of W fixing every generator of S(0)."""
    W = W or weyl_group(rd)
    return [w for w in W if _fixes(w, S.generators)]


@dataclass
class CGroupResult:
    """W(chi), its reflection subgroup W°_chi and the complement C_chi."""
    stabilizer: List[WeylElement]
    reflection_subgroup: List[WeylElement]
    c_chi: List[WeylElement]
    phi_chi: List[int]

    @property
    def order(self) -> int:
        return len(self.c_chi)

    def is_abelian(self, W: WeylGroup) -> bool:
        return all(
            W.multiply(a, b) == W.multiply(b, a)
            for a in self.c_chi for b in self.c_chi
        )

    def to_dict(self) -> dict:
        return {
            "W_chi_order": len(self.stabilizer),
            "W0_order": len(self.reflection_subgroup),
            "C_chi_order": len(self.c_chi),
            "C_chi_words": [list(w.word) for w in self.c_chi],
        }


def c_group(rd: BasedRootDatum, S: InertialDatum, W: Optional[WeylGroup] = None) -> CGroupResult:
    """
    C_chi = {w in W(chi) : w(Phi+ n Phi_chi) = Phi+ n Phi_chi}, certified against
    W(chi) = W°_chi x| C_chi.

    Raises:
        DecompositionFailure: if the split does not hold
    """
    W = W or weyl_group(rd)
    return W.memoized(("c_group", S), lambda: _c_group(rd, S, W))


def _c_group(rd: BasedRootDatum, S: InertialDatum, W: WeylGroup) -> CGroupResult:
    c = conductor_function(rd, S)
    subset, _ = phi_chi(rd, c)
    stab = weyl_stabilizer(rd, S, W)
    stab_keys = {w.key for w in stab}

    chosen = set(subset)
    positive_sub = {i for i in subset if rd.positive[i]}
    w0 = W.reflection_subgroup(positive_sub)
    complement = [w for w in stab if {w.perm[i] for i in positive_sub} == positive_sub]

    for w in stab:
        if {w.perm[i] for i in chosen} != chosen:
            raise DecompositionFailure("Phi_chi is not W(chi)-stable")
        if any(c.values[w.perm[i]] != c.values[i] for i in range(len(rd.roots))):
            raise DecompositionFailure("c is not W(chi)-invariant")
    if any(w.key not in stab_keys for w in w0):
        raise DecompositionFailure("W°_chi is not contained in W(chi)")
    if len(w0) * len(complement) != len(stab):
        raise DecompositionFailure(
            f"|W°| * |C| = {len(w0)} * {len(complement)} != |W(chi)| = {len(stab)}"
        )
    w0_keys = {w.key for w in w0}
    if sum(1 for w in complement if w.key in w0_keys) != 1:
        raise DecompositionFailure("W°_chi meets C_chi nontrivially")

    logger.debug("W(chi)=%d, W°=%d, C_chi=%d", len(stab), len(w0), len(complement))
    return CGroupResult(stab, w0, complement, subset)


# =============================================================================
# RANDOM DATA
# =============================================================================

_TAME_ORDERS = (1, 2, 3, 4, 5, 6, 8)


def _random_point(rng: random.Random, rank: int, order: int) -> TorsionTorusElement:
    return TorsionTorusElement(tuple(Fraction(rng.randrange(order), order) for _ in range(rank)))


def random_inertial_datum(rank: int, rng: random.Random, p: int = 7, max_depth: int = 3) -> InertialDatum:
    """
    Random filtration shaped like the image of O_K^x: a tame point of order
    prime to p at level 0, and a wild p-power point whose multiples p^k w
    populate the deeper levels.
    """
    tame_order = rng.choice([e for e in _TAME_ORDERS if e % p])
    tame = _random_point(rng, rank, tame_order)
    depth = rng.randint(1, max_depth)
    if depth == 1:
        return InertialDatum(rank, ((tame,), ()))

    wild_exp = rng.randint(1, 2)
    wild = _random_point(rng, rank, p ** wild_exp)
    levels = [(tame, wild)]
    k = 0
    for _ in range(depth - 1):
        levels.append((wild.scale(p ** k),))
        if rng.random() < 0.5 and k < wild_exp - 1:
            k += 1
    levels.append(())
    return InertialDatum(rank, tuple(levels))


def regenerate(S: InertialDatum, rng: random.Random) -> InertialDatum:
    """Same filtration, different generating sets at every level."""
    new_levels = []
    for j, level in enumerate(S.levels):
        target = S.group(j)
        elements = sorted(target)
        if len(elements) == 1:
            new_levels.append(())
            continue
        while True:
            picks = [TorsionTorusElement(rng.choice(elements)) for _ in range(len(level) + 1)]
            if generated_group(picks, S.rank) == target:
                break
        new_levels.append(tuple(picks))
    return InertialDatum(S.rank, tuple(new_levels))
