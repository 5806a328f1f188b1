"""
Tests for the integer lattice helpers.
"""

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from src.hii_principal.tools.lattice import (
    integer_kernel,
    integer_rank,
    invariant_factors,
    lattice_quotient,
    smith_normal_form,
)


def integer_matrices(max_size: int):
    return st.integers(1, max_size).flatmap(
        lambda rows: st.integers(1, max_size).flatmap(
            lambda cols: st.lists(
                st.lists(st.integers(-6, 6), min_size=cols, max_size=cols),
                min_size=rows, max_size=rows,
            )
        )
    )


matrices = integer_matrices(4)
square_matrices = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
)


def _det(M) -> int:
    return int(sympy.Matrix(M).det())


def assert_smith_form(M):
    D, U, V = smith_normal_form(M)
    A = np.array(M, dtype=object)
    assert (U.dot(A).dot(V) == D).all()
    assert abs(_det(U.tolist())) == 1
    assert abs(_det(V.tolist())) == 1

    diag = [D[i, i] for i in range(min(D.shape))]
    off = [D[i, j] for i in range(D.shape[0]) for j in range(D.shape[1]) if i != j]
    assert all(x == 0 for x in off)
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[:len(nonzero)] == nonzero
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


class TestSmithNormalForm:
    """D = U M V with unimodular transforms and a divisibility chain."""

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_decomposition(self, M):
        """Test the decomposition on small random matrices."""
        assert_smith_form(M)

    @pytest.mark.slow
    @settings(max_examples=500, deadline=None)
    @given(integer_matrices(8))
    def test_decomposition_up_to_eight(self, M):
        """Test the decomposition on random matrices up to 8 x 8."""
        assert_smith_form(M)

    @pytest.mark.slow
    @settings(max_examples=500, deadline=None)
    @given(square_matrices)
    def test_factors_multiply_to_determinant(self, M):
        """Test that the invariant factors of a square matrix multiply to |det|."""
        det = abs(_det(M))
        factors = invariant_factors(M)
        product = 1
        for d in factors:
            product *= d
        if det:
            assert len(factors) == len(M)
            assert product == det
        else:
            assert len(factors) < len(M)

    def test_known_factors(self):
        """The A2 Cartan matrix has invariant factors 1, 3."""
        assert invariant_factors([[2, -1], [-1, 2]]) == [1, 3]
        assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]

    def test_rank(self):
        """Test integer ranks."""
        assert integer_rank([[1, 2], [2, 4]]) == 1
        assert integer_rank([]) == 0


class TestLatticeQuotient:
    """Z^n / <generators>."""

    def test_torsion_and_free(self):
        """Test torsion and free rank of quotients."""
        assert lattice_quotient(2, [[2, 0]]) == ([2], 1)
        assert lattice_quotient(2, [[1, 1], [1, -1]]) == ([2], 0)
        assert lattice_quotient(3, []) == ([], 3)

    def test_kernel_is_saturated(self):
        """The kernel of (2, 2) is spanned by (1, -1), not (2, -2)."""
        basis = integer_kernel([[2, 2]], 2)
        assert len(basis) == 1
        assert sorted(abs(x) for x in basis[0]) == [1, 1]

    @settings(max_examples=40, deadline=None)
    @given(matrices)
    def test_kernel_vectors(self, M):
        """Test kernel bases on random matrices."""
        n = len(M[0])
        basis = integer_kernel(M, n)
        assert len(basis) == n - integer_rank(M)
        for v in basis:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
