"""
Tests for the exact scalar arithmetic.
"""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.hii_principal.exceptions import DivisionByZero
from src.hii_principal.tools.scalars import (
    Monomial,
    Scalar,
    TorsionValue,
    cyclotomic_degree,
    render_decimal,
    squarefree_split,
)


small_q = st.sampled_from([Fraction(2), Fraction(3), Fraction(5), Fraction(9, 4), Fraction(12)])
short_angles = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12]).flatmap(
    lambda n: st.integers(0, n - 1).map(lambda k: Fraction(k, n))
)
field_settings = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def field_triples(draw):
    """(q, x, y, z) with each element a short sum of zeta and zeta*sqrt(q) terms."""
    q = draw(small_q)

    def element():
        terms = draw(st.lists(st.tuples(short_angles, st.integers(-3, 3), st.booleans()), min_size=1, max_size=3))
        x = Scalar.rational(0, q)
        for r, a, with_root in terms:
            term = a * Scalar.zeta(r, q)
            x = x + (term * Scalar.sqrt_q(q) if with_root else term)
        return x

    return q, element(), element(), element()


class TestScalarBasics:
    """Construction and canonical forms."""

    def test_rational_round_trip(self):
        """Rational values stay rational."""
        x = Scalar.rational(Fraction(7, 3), 3)
        assert x.is_rational()
        assert x.as_fraction() == Fraction(7, 3)

    def test_q_rejected_at_most_one(self):
        """q must exceed 1."""
        with pytest.raises(ValueError):
            Scalar.rational(1, 1)

    def test_sqrt_q_squares_to_q(self):
        """sqrt(q)^2 = q."""
        for q in (2, 3, 5, Fraction(7, 2)):
            r = Scalar.sqrt_q(q)
            assert r * r == q

    def test_square_q_is_folded(self):
        """For a rational square q the sqrt part is folded away."""
        r = Scalar.sqrt_q(9)
        assert r.is_rational()
        assert r.as_fraction() == 3

    def test_sqrt_q_folded_into_cyclotomic_field(self):
        """sqrt(5) lies in Q(zeta_5), so no sqrt part survives."""
        r = Scalar.sqrt_q(5) * Scalar.zeta(Fraction(1, 5), 5)
        assert not any(r.sq_part)
        assert r * r.conjugate() == 5

    def test_zeta_order(self):
        """zeta(1/6)^6 = 1 and zeta(1/2) = -1."""
        z = Scalar.zeta(Fraction(1, 6), 3)
        assert z ** 6 == 1
        assert Scalar.zeta(Fraction(1, 2), 3) == -1

    def test_cyclotomic_degree(self):
        """phi(N) for a few conductors."""
        assert [cyclotomic_degree(n) for n in (1, 2, 3, 4, 5, 6, 8, 12)] == [1, 1, 2, 2, 4, 2, 4, 4]

    def test_squarefree_split(self):
        """q = r^2 d."""
        assert squarefree_split(Fraction(12)) == (Fraction(2), 3)
        assert squarefree_split(Fraction(9, 4)) == (Fraction(3, 2), 1)

    def test_mixed_q_rejected(self):
        """Scalars over different q do not mix."""
        with pytest.raises(ValueError):
            Scalar.rational(1, 3) + Scalar.rational(1, 5)

    def test_zero_inverse(self):
        """Inverting zero raises DivisionByZero."""
        with pytest.raises(DivisionByZero):
            Scalar.rational(0, 3).inverse()
        with pytest.raises(ZeroDivisionError):
            Scalar.rational(1, 3) / 0


class TestCanonicalEquality:
    """Equality does not depend on the conductor a value was built over."""

    def test_sqrt_q_times_unit(self):
        """Test that sqrt(3) equals sqrt(3) * zeta(1/12) * zeta(11/12)."""
        r = Scalar.sqrt_q(3)
        other = r * Scalar.zeta(Fraction(1, 12), 3) * Scalar.zeta(Fraction(11, 12), 3)
        assert other.conductor == 12
        assert r == other
        assert other == r
        assert (r - other).is_zero()

    def test_lifted_folds_sqrt_q(self):
        """Test that lifting sqrt(5) to Q(zeta_5) folds the root."""
        lifted = Scalar.sqrt_q(5).lifted(5)
        assert not any(lifted.sq_part)
        assert lifted == Scalar.sqrt_q(5)
        assert Scalar.sqrt_q(5).lifted(4).sq_part == (Fraction(1), Fraction(0))

    def test_lifted_rejects_non_multiple(self):
        """Test that lifting needs a multiple of the conductor."""
        with pytest.raises(ValueError):
            Scalar.zeta(Fraction(1, 3), 3).lifted(4)

    @pytest.mark.slow
    @field_settings
    @given(field_triples(), short_angles)
    def test_invariant_under_unit(self, triple, r):
        """Test that x == x * zeta(r) * zeta(-r)."""
        q, x, _, _ = triple
        y = x * Scalar.zeta(r, q) * Scalar.zeta(-r, q)
        assert x == y
        assert y == x

    @pytest.mark.slow
    @field_settings
    @given(field_triples())
    def test_equality_matches_difference(self, triple):
        """Test that x == y exactly when x - y is zero."""
        _, x, y, _ = triple
        assert (x == y) == (x - y).is_zero()
        assert x == x + (y - y)


@pytest.mark.slow
class TestScalarField:
    """Field axioms on random elements."""

    @field_settings
    @given(field_triples())
    def test_inverse(self, triple):
        """Test that x * x^-1 = 1 for nonzero x."""
        _, x, _, _ = triple
        if x.is_zero():
            return
        assert x * x.inverse() == 1
        assert x / x == 1

    @field_settings
    @given(field_triples())
    def test_associative(self, triple):
        """Test that sums and products associate."""
        _, x, y, z = triple
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)

    @field_settings
    @given(field_triples())
    def test_distributive(self, triple):
        """Test that x (y + z) = x y + x z."""
        _, x, y, z = triple
        assert x * (y + z) == x * y + x * z

    @field_settings
    @given(field_triples())
    def test_conjugation_involution(self, triple):
        """Test that conjugation is a multiplicative involution."""
        _, x, y, _ = triple
        assert x.conjugate().conjugate() == x
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()
        assert (x + y).conjugate() == x.conjugate() + y.conjugate()

    @field_settings
    @given(field_triples())
    def test_abs_squared_multiplicative(self, triple):
        """Test that |x y|^2 = |x|^2 |y|^2 and |x|^2 is real."""
        _, x, y, _ = triple
        assert (x * y).abs_squared() == x.abs_squared() * y.abs_squared()
        assert x.abs_squared().is_real()

    @field_settings
    @given(small_q, short_angles)
    def test_unit_circle(self, q, r):
        """Test that |zeta|^2 = 1."""
        assert Scalar.zeta(r, q).abs_squared() == 1


class TestMonomial:
    """Monomials zeta * q^(k/2)."""

    def test_multiply_and_invert(self):
        """Test products, inverses and powers of monomials."""
        m = Monomial(3, Fraction(1, 4))
        assert (m * m.inverse()).is_one()
        assert m ** 2 == Monomial(6, Fraction(1, 2))

    def test_qhalf_must_be_int(self):
        """Test that qhalf must be an integer."""
        with pytest.raises(TypeError):
            Monomial(Fraction(1, 2))

    def test_to_scalar(self):
        """q^(1/2) * q^(1/2) = q."""
        m = Monomial(1)
        assert m.to_scalar(5) * m.to_scalar(5) == 5
        assert Monomial(-2).to_scalar(3) == Fraction(1, 3)

    def test_str(self):
        """Test the printed form."""
        assert str(Monomial()) == "1"
        assert str(Monomial(-1, Fraction(1, 3))) == "e(1/3)*q^(-1/2)"

    def test_torsion_value(self):
        """Test reduction and order of torsion values."""
        t = TorsionValue(Fraction(5, 4))
        assert t.r == Fraction(1, 4)
        assert t.order == 4
        assert (t.scale(4)).is_trivial()


class TestRenderDecimal:
    """Exact decimal rendering."""

    def test_terminating(self):
        """Test a terminating decimal."""
        assert render_decimal(Fraction(81, 64)) == "1.265625"

    def test_truncated(self):
        """Test a truncated decimal."""
        assert render_decimal(Fraction(1, 3), digits=4) == "0.3333..."

    def test_irrational_falls_back(self):
        """Test that irrational values print exactly."""
        x = Scalar.sqrt_q(3)
        assert render_decimal(x) == str(x)
