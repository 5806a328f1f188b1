"""
Exact Scalars
=============
Exact arithmetic in Q(zeta_N)(sqrt q) for a rational q > 1, plus the two
small value types the rest of the toolkit is written in:

    Scalar        a + b*sqrt(q) with a, b in the power basis of Q(zeta_N)
    Monomial      zeta * q^(k/2), the Frobenius eigenvalues on root lines
    TorsionValue  an element of Q/Z, values of coroots on torsion points

Cyclotomic polynomials come from sympy; everything else is Fraction
arithmetic on coefficient tuples.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Sequence, Tuple, Union

import sympy
from sympy.polys.polyerrors import NotInvertible

from ..exceptions import DivisionByZero

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]
Coeffs = Tuple[Fraction, ...]

_X = sympy.Symbol("x")
_ZERO = Fraction(0)


# =============================================================================
# CYCLOTOMIC KERNELS
# =============================================================================

def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> Tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    poly = sympy.Poly(sympy.cyclotomic_poly(n, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def cyclotomic_degree(n: int) -> int:
    return len(cyclotomic_coefficients(n)) - 1


def _reduce(coeffs: Sequence[Rational], n: int) -> Coeffs:
    """Reduce a coefficient list modulo Phi_n (Phi_n is monic)."""
    phi = cyclotomic_coefficients(n)
    d = len(phi) - 1
    work = [Fraction(c) for c in coeffs]
    if len(work) < d:
        work.extend([_ZERO] * (d - len(work)))
    for k in range(len(work) - 1, d - 1, -1):
        c = work[k]
        if c:
            shift = k - d
            for i, p in enumerate(phi):
                if p:
                    work[shift + i] -= c * p
    return tuple(work[:d])


def _lift(coeffs: Coeffs, m: int, n: int) -> Coeffs:
    """Embed Q(zeta_m) into Q(zeta_n) for m | n via zeta_m -> zeta_n^(n/m)."""
    if m == n:
        return coeffs
    step = n // m
    out = [_ZERO] * ((len(coeffs) - 1) * step + 1)
    for k, c in enumerate(coeffs):
        out[k * step] = c
    return _reduce(out, n)


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _mul(a: Coeffs, b: Coeffs, n: int) -> Coeffs:
    return _reduce(_poly_mul(a, b), n)


def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    return tuple(x + y for x, y in zip(a, b))


def _scale(a: Coeffs, c: Fraction) -> Coeffs:
    return tuple(c * x for x in a)


def _field_inverse(coeffs: Coeffs, n: int) -> Coeffs:
    """Inverse in Q(zeta_n) through sympy's extended gcd modulo Phi_n."""
    if not any(coeffs):
        raise DivisionByZero("inverse of zero")
    f = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
        _X, domain=sympy.QQ,
    )
    g = sympy.Poly(list(reversed(cyclotomic_coefficients(n))), _X, domain=sympy.QQ)
    try:
        inv = f.invert(g)
    except NotInvertible as e:
        raise DivisionByZero(str(e)) from e
    return _reduce([Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())], n)


# =============================================================================
# SQRT(q) INSIDE CYCLOTOMIC FIELDS
# =============================================================================

@lru_cache(maxsize=None)
def squarefree_split(q: Fraction) -> Tuple[Fraction, int]:
    """Write q = r^2 * d with r rational and d a squarefree positive integer."""
    m = q.numerator * q.denominator
    r, d = 1, 1
    for p, e in sympy.factorint(m).items():
        r *= p ** (e // 2)
        if e % 2:
            d *= p
    return Fraction(r, q.denominator), d


def _gauss_sum(p: int, n: int) -> List[Fraction]:
    step = n // p
    out = [_ZERO] * n
    for a in range(1, p):
        out[a * step] += 1 if pow(a, (p - 1) // 2, p) == 1 else -1
    return out


@lru_cache(maxsize=None)
def sqrt_embedding(d: int) -> Tuple[int, Coeffs]:
    """
    Express sqrt(d) (d squarefree) in the power basis of Q(zeta_f), f the
    conductor of Q(sqrt d), using Gauss sums with zeta_f = exp(2 pi i / f).

    Returns:
        (f, coefficients)
    """
    f = d if d % 4 == 1 else 4 * d
    value: Coeffs = _reduce([1], f)
    k = 0
    for p in sympy.primefactors(d):
        if p == 2:
            factor = [_ZERO] * f
            factor[f // 8] += 1
            factor[7 * f // 8] += 1
        else:
            factor = _gauss_sum(p, f)
            if p % 4 == 3:
                k += 1
        value = _reduce(_poly_mul(value, factor), f)
    # sqrt(p) = -i * g_p for p = 3 mod 4
    k %= 4
    if k in (2, 3):
        value = _scale(value, Fraction(-1))
    if k % 2:
        i_unit = [_ZERO] * (f // 4 + 1)
        i_unit[f // 4] = Fraction(-1)
        value = _mul(value, tuple(i_unit), f)
    return f, value


# =============================================================================
# SCALAR
# =============================================================================

@dataclass(frozen=True, eq=False)
class Scalar:
    """
    Exact element a + b*sqrt(q) of Q(zeta_N)(sqrt q).

    Instances are canonical: coefficients are reduced modulo Phi_N, and when
    sqrt(q) already lies in Q(zeta_N) (always the case for rational squares)
    it is folded into re_part so that sq_part is zero.
    """
    conductor: int
    re_part: Coeffs
    sq_part: Coeffs
    q: Fraction

    __hash__ = None

    def __post_init__(self):
        if self.q <= 1:
            raise ValueError(f"q must be a rational > 1, got {self.q}")
        d = cyclotomic_degree(self.conductor)
        if len(self.re_part) != d or len(self.sq_part) != d:
            raise ValueError("coefficient vectors must have length phi(N)")

    # -- construction ---------------------------------------------------------

    @classmethod
    def build(cls, conductor: int, re: Sequence[Rational], sq: Sequence[Rational], q: Rational) -> "Scalar":
        """Reduce and canonicalize raw coefficient lists."""
        q = Fraction(q)
        re_c = _reduce(re, conductor)
        sq_c = _reduce(sq, conductor)
        if any(sq_c):
            r, d = squarefree_split(q)
            f, root = sqrt_embedding(d)
            if conductor % f == 0:
                folded = _scale(_mul(sq_c, _lift(root, f, conductor), conductor), r)
                re_c = _add(re_c, folded)
                sq_c = tuple(_ZERO for _ in sq_c)
        return cls(conductor, re_c, sq_c, q)

    @classmethod
    def rational(cls, value: Rational, q: Rational) -> "Scalar":
        return cls.build(1, [Fraction(value)], [0], q)

    @classmethod
    def zeta(cls, r: Rational, q: Rational) -> "Scalar":
        """exp(2 pi i r) for rational r."""
        r = Fraction(r) % 1
        n = r.denominator
        raw = [_ZERO] * n
        raw[r.numerator] = Fraction(1)
        return cls.build(n, raw, [0], q)

    @classmethod
    def sqrt_q(cls, q: Rational) -> "Scalar":
        return cls.build(1, [0], [1], q)

    @classmethod
    def q_power(cls, qhalf: int, q: Rational) -> "Scalar":
        """q^(qhalf/2)."""
        q = Fraction(q)
        whole, odd = divmod(qhalf, 2)
        coefficient = q ** whole
        if odd:
            return cls.build(1, [0], [coefficient], q)
        return cls.build(1, [coefficient], [0], q)

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.q != self.q:
                raise ValueError(f"cannot mix q={self.q} and q={other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.rational(other, self.q)
        if isinstance(other, Monomial):
            return other.to_scalar(self.q)
        return NotImplemented

    def lifted(self, n: int) -> "Scalar":
        """
        The same element over Q(zeta_n) for a multiple n of the conductor,
        with sqrt(q) folded again when it lies in Q(zeta_n).
        """
        if n % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {n}")
        return Scalar.build(
            n, _lift(self.re_part, self.conductor, n), _lift(self.sq_part, self.conductor, n), self.q
        )

    def _aligned(self, other: "Scalar") -> Tuple[int, Coeffs, Coeffs, Coeffs, Coeffs]:
        n = _lcm(self.conductor, other.conductor)
        a, b = self.lifted(n), other.lifted(n)
        return n, a.re_part, a.sq_part, b.re_part, b.sq_part

    # -- field operations ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n, a, b, c, d = self._aligned(other)
        return Scalar.build(n, _add(a, c), _add(b, d), self.q)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(self.conductor, _scale(self.re_part, Fraction(-1)),
                      _scale(self.sq_part, Fraction(-1)), self.q)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n, a, b, c, d = self._aligned(other)
        re = _add(_mul(a, c, n), _scale(_mul(b, d, n), self.q))
        sq = _add(_mul(a, d, n), _mul(b, c, n))
        return Scalar.build(n, re, sq, self.q)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """(a - b sqrt q) / (a^2 - q b^2)."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero Scalar")
        n = self.conductor
        a, b = self.re_part, self.sq_part
        if not any(b):
            return Scalar.build(n, _field_inverse(a, n), [0], self.q)
        norm = _add(_mul(a, a, n), _scale(_mul(b, b, n), -self.q))
        norm_inv = _field_inverse(norm, n)
        return Scalar.build(n, _mul(a, norm_inv, n), _scale(_mul(b, norm_inv, n), Fraction(-1)), self.q)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = Scalar.rational(1, self.q)
        for _ in range(abs(k)):
            result = result * base
        return result

    def conjugate(self) -> "Scalar":
        """Complex conjugation: zeta_N -> zeta_N^(N-1), sqrt(q) fixed."""
        n = self.conductor

        def flip(coeffs: Coeffs) -> List[Fraction]:
            out = [_ZERO] * n
            for k, c in enumerate(coeffs):
                out[(n - k) % n] += c
            return out

        return Scalar.build(n, flip(self.re_part), flip(self.sq_part), self.q)

    def abs_squared(self) -> "Scalar":
        return self * self.conjugate()

    # -- predicates --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.re_part) and not any(self.sq_part)

    def is_rational(self) -> bool:
        return not any(self.sq_part) and not any(self.re_part[1:])

    def is_real(self) -> bool:
        return self == self.conjugate()

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.re_part[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            if other.q != self.q:
                return False
        else:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        _, a, b, c, d = self._aligned(other)
        return a == c and b == d

    # -- rendering ----------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.as_fraction())
        terms = []
        for label, coeffs in (("", self.re_part), ("sqrt(q)", self.sq_part)):
            for k, c in enumerate(coeffs):
                if not c:
                    continue
                factors = [label] if label else []
                if k:
                    factors.append(f"z{self.conductor}^{k}")
                if c != 1 or not factors:
                    factors.insert(0, str(c))
                terms.append("*".join(factors))
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Scalar({self}, q={self.q})"


# =============================================================================
# MONOMIAL AND TORSION VALUES
# =============================================================================

@dataclass(frozen=True)
class Monomial:
    """zeta * q^(qhalf/2) with zeta = exp(2 pi i * zeta) stored as a rational mod 1."""
    qhalf: int = 0
    zeta: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.qhalf, int):
            raise TypeError("qhalf must be an integer (twice the q-exponent)")
        object.__setattr__(self, "zeta", Fraction(self.zeta) % 1)

    @property
    def q_half_exponent(self) -> Fraction:
        return Fraction(self.qhalf, 2)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self.qhalf + other.qhalf, self.zeta + other.zeta)

    def inverse(self) -> "Monomial":
        return Monomial(-self.qhalf, -self.zeta)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(self.qhalf * k, self.zeta * k)

    def is_one(self) -> bool:
        return self.qhalf == 0 and self.zeta == 0

    def root_of_unity_part(self) -> "Monomial":
        return Monomial(0, self.zeta)

    def to_scalar(self, q: Rational) -> Scalar:
        return Scalar.zeta(self.zeta, q) * Scalar.q_power(self.qhalf, q)

    def __str__(self) -> str:
        parts = []
        if self.zeta:
            parts.append(f"e({self.zeta})")
        if self.qhalf:
            parts.append(f"q^({self.q_half_exponent})")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class TorsionValue:
    """An element of Q/Z; r = 0 is the trivial value."""
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r) % 1)

    def __add__(self, other: "TorsionValue") -> "TorsionValue":
        return TorsionValue(self.r + other.r)

    def __neg__(self) -> "TorsionValue":
        return TorsionValue(-self.r)

    def __sub__(self, other: "TorsionValue") -> "TorsionValue":
        return TorsionValue(self.r - other.r)

    def scale(self, k: int) -> "TorsionValue":
        return TorsionValue(self.r * k)

    def is_trivial(self) -> bool:
        return self.r == 0

    @property
    def order(self) -> int:
        return self.r.denominator

    def __str__(self) -> str:
        return str(self.r)


# =============================================================================
# RENDERING
# =============================================================================

def render_scalar(value: Scalar) -> str:
    return str(value)


def render_decimal(value: Union[Scalar, Fraction], digits: int = 12) -> str:
    """
    Exact decimal expansion of a rational value by long division.

    Truncated expansions end in '...'. Irrational Scalars have no decimal
    rendering and are returned in exact form.
    """
    if isinstance(value, Scalar):
        if not value.is_rational():
            return str(value)
        value = value.as_fraction()
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    whole, rem = divmod(num, den)
    out = []
    while rem and len(out) < digits:
        rem *= 10
        digit, rem = divmod(rem, den)
        out.append(str(digit))
    text = f"{sign}{whole}"
    if out:
        text += "." + "".join(out)
    if rem:
        text += "..."
    return text
