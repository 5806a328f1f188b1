"""
Principal Series Parameters
===========================
A parameter is an inertial datum (the image of inertia in the dual torus),
a Frobenius twist s in the dual torus and the weight cocharacter h of the
sl2 part. From it we build the adjoint Weil-Deligne representation:

    ramified lines      root lines moved by inertia, one per root with c != 0
    unramified strands  (mu, m) = unramified character mu (x) Sym^m, recovered
                        from the weight multiset of the inertia-fixed part

Frobenius is geometric; on a strand (mu, m) the kernel of N carries the
eigenvalue mu * q^(-m/2). With this choice the Steinberg adjoint L-function
is zeta(s + 1).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .config import get_settings
from .exceptions import InconsistentStrings, InvalidParameter, NotClosed, PoleFlag, ZeroFlag
from .ramification import InertialDatum, TorsionTorusElement, conductor_function
from .rootdata import BasedRootDatum, dual_datum, is_closed_subsystem, pairing, subsystem_datum
from .tools.lattice import integer_rank
from .tools.scalars import Monomial, Scalar

logger = logging.getLogger(__name__)

Strand = Tuple[Monomial, int]


# =============================================================================
# DUAL TORUS ELEMENTS
# =============================================================================

@dataclass(frozen=True)
class TorusElement:
    """A point of the dual torus X* (x) C^x with Monomial coordinates."""
    coords: Tuple[Monomial, ...]

    @classmethod
    def identity(cls, rank: int) -> "TorusElement":
        return cls(tuple(Monomial() for _ in range(rank)))

    @classmethod
    def from_torsion(cls, t: TorsionTorusElement) -> "TorusElement":
        return cls(tuple(Monomial(0, c) for c in t.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def evaluate(self, cocharacter: Sequence[int]) -> Monomial:
        """lambda(s) = prod_i s_i^(lambda_i)."""
        out = Monomial()
        for c, k in zip(self.coords, cocharacter):
            out = out * c ** int(k)
        return out

    def act(self, matrix) -> "TorusElement":
        """Image under a Weyl matrix acting on X*."""
        n = self.rank
        return TorusElement(tuple(
            self.evaluate([int(matrix[i, j]) for j in range(n)])
            for i in range(n)
        ))

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return TorusElement(tuple(a * b for a, b in zip(self.coords, other.coords)))

    def is_identity(self) -> bool:
        return all(c.is_one() for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


# =============================================================================
# sl2 STRINGS
# =============================================================================

def string_peel(weights: Sequence[Tuple[Monomial, int]]) -> List[Strand]:
    """
    Recover the sl2 decomposition of a weight multiset.

    Within each mu-class the largest remaining weight k* is removed together
    with k* - 2, ..., -k*, giving the strand (mu, k*).

    Raises:
        InconsistentStrings: if some string cannot be completed
    """
    classes: Dict[Monomial, Counter] = {}
    for mu, k in weights:
        classes.setdefault(mu, Counter())[int(k)] += 1

    strands: List[Strand] = []
    for mu, counts in classes.items():
        while counts:
            top = max(counts)
            if top < 0:
                raise InconsistentStrings(f"weight {top} of class {mu} has no partner {-top}")
            for k in range(top, -top - 1, -2):
                if counts[k] <= 0:
                    raise InconsistentStrings(f"string of top weight {top} in class {mu} misses weight {k}")
                counts[k] -= 1
                if not counts[k]:
                    del counts[k]
            strands.append((mu, top))
    return strands


def _strand_weights(strands: Sequence[Strand]) -> Counter:
    out = Counter()
    for mu, m in strands:
        for k in range(m, -m - 1, -2):
            out[(mu, k)] += 1
    return out


# =============================================================================
# ADJOINT WEIL-DELIGNE REPRESENTATION
# =============================================================================

@dataclass(frozen=True)
class WDAdjointRep:
    """Ad o phi split into ramified root lines and unramified sl2 strands."""
    ramified_lines: Tuple[Tuple[int, int, Monomial], ...]
    unramified_strands: Tuple[Strand, ...]
    q: Fraction

    @property
    def dimension(self) -> int:
        return len(self.ramified_lines) + sum(m + 1 for _, m in self.unramified_strands)

    def strand_table(self) -> List[dict]:
        return [{"mu": str(mu), "m": m, "dim": m + 1} for mu, m in self.unramified_strands]

    def modulo_center(self, central: int) -> "WDAdjointRep":
        """Drop `central` trivial strands (1, 0), i.e. pass to g^vee / z(g^vee)."""
        kept, dropped = [], 0
        for mu, m in self.unramified_strands:
            if dropped < central and m == 0 and mu.is_one():
                dropped += 1
            else:
                kept.append((mu, m))
        if dropped != central:
            raise InconsistentStrings(f"only {dropped} trivial strands, center has dimension {central}")
        return WDAdjointRep(self.ramified_lines, tuple(kept), self.q)

    def sorted_strands(self) -> List[Strand]:
        return sorted(self.unramified_strands, key=lambda t: (t[0].zeta, t[0].qhalf, t[1]))

    def to_dict(self) -> dict:
        return {
            "q": str(self.q),
            "ramified_lines": [
                {"root": i, "c": c, "frobenius": str(lam)} for i, c, lam in self.ramified_lines
            ],
            "strands": self.strand_table(),
        }


@dataclass(frozen=True)
class Parameter:
    """
    phi = (inertial datum, Frobenius twist s, sl2 weight cocharacter h).

    The Frobenius image is s * h(q^(1/2)). Construction builds the adjoint
    WD representation, so an h that is not an sl2 grading is rejected here.
    """
    datum: BasedRootDatum
    inertial: InertialDatum
    s: TorusElement
    h: Tuple[int, ...]
    q: Fraction = field(default_factory=lambda: get_settings().default_q)

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(int(x) for x in self.h))
        object.__setattr__(self, "q", Fraction(self.q))
        n = self.datum.rank
        if self.q <= 1:
            raise InvalidParameter(f"q must be > 1, got {self.q}")
        if self.s.rank != n or len(self.h) != n or self.inertial.rank != n:
            raise InvalidParameter(
                f"rank mismatch: datum {n}, s {self.s.rank}, h {len(self.h)}, inertia {self.inertial.rank}"
            )
        self.adjoint

    @cached_property
    def adjoint(self) -> WDAdjointRep:
        return adjoint_wd(self)

    def frobenius_eigenvalue(self, i: int) -> Monomial:
        """alpha^vee(s) * q^(<h, alpha^vee>/2) on the root line of root i."""
        coroot = self.datum.coroots[i]
        return self.s.evaluate(coroot) * Monomial(pairing(self.h, coroot))

    def to_dict(self) -> dict:
        return {
            "datum": str(self.datum),
            "inertial": self.inertial.to_dict(),
            "s": [str(c) for c in self.s.coords],
            "h": list(self.h),
            "q": str(self.q),
        }


def adjoint_wd(p: Parameter) -> WDAdjointRep:
    """
    Split Ad o phi into ramified lines and peeled unramified strands.

    Raises:
        InconsistentStrings: if the h-grading of the inertia-fixed part is not
            an sl2 weight grading
    """
    rd = p.datum
    c = conductor_function(rd, p.inertial)
    ramified = []
    weights: List[Tuple[Monomial, int]] = [(Monomial(), 0)] * rd.rank
    for i, coroot in enumerate(rd.coroots):
        if c[i]:
            ramified.append((i, c[i], p.frobenius_eigenvalue(i)))
        else:
            weights.append((p.s.evaluate(coroot), pairing(p.h, coroot)))

    strands = string_peel(weights)
    if _strand_weights(strands) != Counter(weights):
        raise InconsistentStrings("strand weights do not reconstruct the input multiset")
    if sum(m + 1 for _, m in strands) + len(ramified) != rd.dimension:
        raise InconsistentStrings("strand dimensions do not add up to dim G")

    logger.debug("Peeled %d weights into strands %s", len(weights), [(str(mu), m) for mu, m in strands])
    return WDAdjointRep(tuple(ramified), tuple(strands), p.q)


# =============================================================================
# L, EPSILON AND GAMMA VALUES
# =============================================================================

def _q_monomial(qhalf: int, q: Fraction) -> Scalar:
    return Scalar.q_power(qhalf, q)


def _half_integral(s0: Union[int, Fraction]) -> int:
    twice = 2 * Fraction(s0)
    if twice.denominator != 1:
        raise InvalidParameter(f"s0 must be a half-integer, got {s0}")
    return int(twice)


def l_value(wd: WDAdjointRep, s0: Union[int, Fraction], dualize: bool = False) -> Scalar:
    """
    L(s0) of the unramified part: prod over strands of (1 - mu^(+-1) q^(-m/2 - s0))^-1.

    Ramified lines contribute 1. With dualize=True mu is inverted, giving the
    L-function of the contragredient.

    Raises:
        InvalidParameter: if s0 is not a half-integer
        PoleFlag: if some factor has a pole at s0
    """
    twice_s0 = _half_integral(s0)
    value = Scalar.rational(1, wd.q)
    for mu, m in wd.unramified_strands:
        base = mu.inverse() if dualize else mu
        factor = 1 - (base * Monomial(-m - twice_s0)).to_scalar(wd.q)
        if factor.is_zero():
            raise PoleFlag(f"L({s0})", f"strand ({mu}, {m})")
        value = value / factor
    return value


def gamma_ramified_abs_squared(wd: WDAdjointRep) -> Scalar:
    """|eps_ram(0)|^2 = q^(sum over ramified lines of (c + 1))."""
    return _q_monomial(2 * sum(c + 1 for _, c, _ in wd.ramified_lines), wd.q)


def _strand_gamma(mu: Monomial, m: int, q: Fraction) -> Scalar:
    eps = Scalar.rational(1, q)
    for qhalf in range(-m + 2, m + 1, 2):
        eps = eps * (mu * Monomial(qhalf)).to_scalar(q).abs_squared()

    at_zero = 1 - (mu * Monomial(-m)).to_scalar(q)
    if at_zero.is_zero():
        raise ZeroFlag("L(0)", f"strand ({mu}, {m})")
    at_one = 1 - (mu.inverse() * Monomial(-m - 2)).to_scalar(q)
    if at_one.is_zero():
        raise PoleFlag("L(1)", f"dual strand ({mu}, {m})")
    return eps * at_zero.abs_squared() / at_one.abs_squared()


def gamma_unramified_abs_squared(wd: WDAdjointRep) -> Scalar:
    value = Scalar.rational(1, wd.q)
    for mu, m in wd.unramified_strands:
        value = value * _strand_gamma(mu, m, wd.q)
    return value


def gamma_abs_squared_at_zero(wd: WDAdjointRep, q: Optional[Fraction] = None) -> Scalar:
    """
    |gamma(0, Ad o phi, psi)|^2 for an order-0 additive character psi.

    Raises:
        ZeroFlag: if L(0) has a pole (gamma vanishes)
        PoleFlag: if L(1) of the dual has a pole
    """
    if q is not None and Fraction(q) != wd.q:
        raise InvalidParameter(f"q={q} does not match the representation's q={wd.q}")
    return gamma_ramified_abs_squared(wd) * gamma_unramified_abs_squared(wd)


def _epsilon_line_abs_squared(a: int, eigenvalue: Monomial, q: Fraction) -> Scalar:
    """|eps(0, chi |.|^t)|^2 = q^(a(1 - 2t)) where the eigenvalue is zeta q^(-t)."""
    return _q_monomial(2 * a * (1 + eigenvalue.qhalf), q)


def gamma_abs_squared_uniform(wd: WDAdjointRep) -> Scalar:
    """
    |gamma(0)|^2 with the local recipe applied to every summand separately.

    Each ramified line is a twisted ramified character with its own epsilon
    factor and trivial L-factors; the twists cancel only in the product. Each
    strand is evaluated from its explicit Frobenius spectrum.
    """
    q = wd.q
    value = Scalar.rational(1, q)
    for _, c, eigenvalue in wd.ramified_lines:
        value = value * _epsilon_line_abs_squared(c + 1, eigenvalue, q)

    for mu, m in wd.unramified_strands:
        spectrum = [mu * Monomial(qhalf) for qhalf in range(-m, m + 1, 2)]
        kernel, quotient = spectrum[0], spectrum[1:]
        dual_kernel = spectrum[-1].inverse()
        eps = Scalar.rational(1, q)
        for lam in quotient:
            eps = eps * (-lam.to_scalar(q)).abs_squared()
        l_zero = 1 - kernel.to_scalar(q)
        l_one_dual = 1 - dual_kernel.to_scalar(q) * Scalar.q_power(-2, q)
        if l_zero.is_zero():
            raise ZeroFlag("L(0)", f"strand ({mu}, {m})")
        if l_one_dual.is_zero():
            raise PoleFlag("L(1)", f"dual strand ({mu}, {m})")
        value = value * eps * l_zero.abs_squared() / l_one_dual.abs_squared()
    return value


# =============================================================================
# DISCRETENESS AND STEINBERG-TYPE PARAMETERS
# =============================================================================

def central_dimension(rd: BasedRootDatum) -> int:
    """dim Z(G^vee) = l - rank(Z . coroots)."""
    return rd.rank - (integer_rank(rd.coroots) if rd.coroots else 0)


def is_discrete(p: Parameter) -> bool:
    """True iff dim (g^vee)^phi equals dim Z(G^vee)."""
    invariant = sum(1 for mu, m in p.adjoint.unramified_strands if m == 0 and mu.is_one())
    return invariant == central_dimension(p.datum)


def principal_sl2_cocharacter(rd: BasedRootDatum, subsystem: Sequence[int]) -> Tuple[int, ...]:
    """
    h = sum of the positive roots in the subsystem, so <h, beta^vee> = 2 for
    every simple coroot beta^vee of the dual subsystem.

    Raises:
        NotClosed: if the subsystem is not closed in the dual system
    """
    subset = sorted(set(subsystem))
    dual = dual_datum(rd)
    if not is_closed_subsystem(dual, subset):
        raise NotClosed(f"subsystem {subset} is not closed")
    h = [0] * rd.rank
    for i in subset:
        if rd.positive[i]:
            h = [a + b for a, b in zip(h, rd.roots[i])]

    sub = subsystem_datum(dual, subset)
    for beta in sub.simple_roots:
        if pairing(h, beta) != 2:
            raise NotClosed(f"subset {subset} is not a root subsystem: <h, {beta}> = {pairing(h, beta)}")
    return tuple(h)


def connected_centralizer_indices(rd: BasedRootDatum, S: InertialDatum, s: TorusElement) -> List[int]:
    """Roots of Z(phi(I) u {s})°: c_alpha = 0 and alpha^vee(s) = 1."""
    c = conductor_function(rd, S)
    return [i for i, coroot in enumerate(rd.coroots) if not c[i] and s.evaluate(coroot).is_one()]


def steinberg_parameter(
    rd: BasedRootDatum,
    S: InertialDatum,
    s: Optional[TorusElement] = None,
    q: Optional[Fraction] = None,
) -> Parameter:
    """The parameter whose sl2 is principal in the connected centralizer of S u {s}."""
    s = s or TorusElement.identity(rd.rank)
    h = principal_sl2_cocharacter(rd, connected_centralizer_indices(rd, S, s))
    return Parameter(rd, S, s, h, Fraction(q) if q is not None else get_settings().default_q)


def is_steinberg_type(p: Parameter) -> bool:
    return p.h == principal_sl2_cocharacter(
        p.datum, connected_centralizer_indices(p.datum, p.inertial, p.s)
    )
