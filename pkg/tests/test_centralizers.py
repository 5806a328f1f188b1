"""
Tests for component groups and |S#| of Steinberg-type parameters.
"""

from fractions import Fraction

import pytest

from src.hii_principal.centralizers import (
    Pi0Description,
    c_nu,
    connected_centralizer_subsystem,
    pi0_diagonalizable,
    pi0_torus_subset_centralizer,
    s_sharp_steinberg,
)
from src.hii_principal.exceptions import NotDiscrete, NotSteinbergType
from src.hii_principal.parameters import TorusElement
from src.hii_principal.ramification import InertialDatum, TorsionTorusElement
from src.hii_principal.rootdata import construct_root_datum, dual_datum, weyl_group
from src.hii_principal.tools.scalars import Monomial


def unramified(rd):
    return InertialDatum.unramified(rd.rank)


class TestPi0Diagonalizable:
    """Centers from X* / Z.Phi."""

    def test_a2_simply_connected(self):
        """Test the center of simply connected A2."""
        rd = construct_root_datum("A2", "sc")
        pi0 = pi0_diagonalizable(rd, range(len(rd.roots)))
        assert pi0.order == 3
        assert pi0.torus_part_invariants == [3]
        assert pi0.free_rank == 0

    def test_adjoint_is_trivial(self):
        """Test the trivial center of adjoint A2."""
        rd = construct_root_datum("A2", "ad")
        assert pi0_diagonalizable(rd, range(len(rd.roots))).order == 1

    def test_dual_side(self):
        """The dual of SL2 is PGL2, whose center is trivial."""
        rd = construct_root_datum("A1", "sc")
        dual = dual_datum(rd)
        assert pi0_diagonalizable(dual, range(len(dual.roots))).order == 1
        assert pi0_diagonalizable(rd, range(len(rd.roots))).order == 2

    def test_gl2_has_free_part(self):
        """Test that GL2 has a central torus and no torsion."""
        rd = construct_root_datum("GL2")
        pi0 = pi0_diagonalizable(rd, range(len(rd.roots)))
        assert pi0.order == 1
        assert pi0.free_rank == 1

    def test_order_is_validated(self):
        """Test that a wrong order is rejected."""
        with pytest.raises(ValueError):
            Pi0Description(order=4, torus_part_invariants=[3])


class TestTorusSubsetCentralizer:
    """pi0 Z(A) = Stab_W(A) / W(Phi_A)."""

    def test_sp4_quadratic_point(self):
        """Test pi0 at the quadratic point of Sp4."""
        rd = construct_root_datum("C2", "sc")
        point = TorsionTorusElement((Fraction(1, 2), Fraction(1, 2)))
        assert len(connected_centralizer_subsystem(rd, [point])) == 4
        assert pi0_torus_subset_centralizer(rd, [point]).order == 2

    def test_identity(self):
        """Test that the identity has connected centralizer."""
        rd = construct_root_datum("B2")
        pi0 = pi0_torus_subset_centralizer(rd, [TorusElement.identity(2)])
        assert pi0.order == 1

    def test_regular_point(self):
        """A regular point of SL2's dual torus has trivial pi0."""
        rd = construct_root_datum("A1", "sc")
        point = TorusElement((Monomial(0, Fraction(1, 3)),))
        assert connected_centralizer_subsystem(rd, [point]) == []
        assert pi0_torus_subset_centralizer(rd, [point]).order == 1


class TestSSharp:
    """|S#| for Steinberg-type parameters."""

    @pytest.mark.parametrize("name,lattice,order", [
        ("A1", "ad", 2), ("A1", "sc", 1), ("GL2", "sc", 2),
        ("A2", "ad", 3), ("A2", "sc", 1), ("B2", "ad", 2), ("G2", "sc", 1),
    ])
    def test_unramified(self, name, lattice, order):
        """Test S# of unramified Steinberg parameters."""
        rd = construct_root_datum(name, lattice)
        result = s_sharp_steinberg(rd, unramified(rd))
        assert result.order == order
        assert result.c_chi_order == 1
        assert result.literal_factorization_holds

    def test_sp4_quadratic(self):
        """Test S# and its factorization for the Sp4 quadratic block."""
        rd = construct_root_datum("C2", "sc")
        S = InertialDatum.from_levels(2, [[["1/2", "1/2"]], []])
        result = s_sharp_steinberg(rd, S)
        assert result.order == 4
        assert result.s_sharp_prime.order == 2
        assert result.c_chi_order == 2
        assert result.c_nu_order == 2
        assert result.literal_factorization_holds
        assert result.to_dict()["C_nu_order"] == 2

    def test_c_nu_full_for_trivial_twist(self):
        """Test that C_nu is all of C_chi for s = 1."""
        rd = construct_root_datum("C2", "sc")
        S = InertialDatum.from_levels(2, [[["1/2", "1/2"]], []])
        assert len(c_nu(rd, S, TorusElement.identity(2))) == 2

    def test_not_steinberg(self):
        """Test that a non-principal h is rejected."""
        rd = construct_root_datum("A1", "ad")
        with pytest.raises(NotSteinbergType):
            s_sharp_steinberg(rd, unramified(rd), h=(0,))

    def test_ramified_sl2_not_discrete(self):
        """Test that ramified SL2 has no discrete Steinberg parameter."""
        rd = construct_root_datum("A1", "sc")
        S = InertialDatum.from_levels(1, [[["1/2"]], []])
        with pytest.raises(NotDiscrete):
            s_sharp_steinberg(rd, S)

    def test_shared_weyl_group(self):
        """Test S# with a Weyl group passed in."""
        rd = construct_root_datum("A1xA1", "ad")
        W = weyl_group(rd)
        S = InertialDatum.from_levels(2, [[["1/2", "0"]]])
        assert s_sharp_steinberg(rd, S, W=W).order == 4
