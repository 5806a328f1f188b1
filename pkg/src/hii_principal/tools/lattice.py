"""
Integer Lattices
================
Smith normal form over Z and the lattice quotients built on it
(invariant factors, torsion of Z^n / <generators>, saturated kernels).

All arithmetic is on Python ints; results are handed back as numpy
object arrays so that `U @ M @ V` stays exact for callers.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


class SmithNormalForm:
    """
    Smith normal form D = U M V of an integer matrix M (m x n).

    U (m x m) and V (n x n) are unimodular and D is diagonal with
    non-negative entries d1 | d2 | ... ; zero entries come last.

    Usage
    -----
    snf = SmithNormalForm(M)
    snf.run()
    snf.D, snf.U, snf.V
    """

    def __init__(self, matrix: Sequence[Sequence[int]]):
        self._A: IntMatrix = [[int(x) for x in row] for row in matrix]
        self.rows = len(self._A)
        self.cols = len(self._A[0]) if self._A else 0
        self._U = _identity(self.rows)
        self._V = _identity(self.cols)
        self._done = False

    # -- elementary operations (applied to A and the matching transform) ------

    def _swap_rows(self, i: int, j: int):
        if i != j:
            for M in (self._A, self._U):
                M[i], M[j] = M[j], M[i]

    def _swap_cols(self, i: int, j: int):
        if i != j:
            for M in (self._A, self._V):
                for row in M:
                    row[i], row[j] = row[j], row[i]

    def _add_row(self, target: int, source: int, k: int):
        """row[target] += k * row[source]"""
        for M in (self._A, self._U):
            M[target] = [a + k * b for a, b in zip(M[target], M[source])]

    def _add_col(self, target: int, source: int, k: int):
        """col[target] += k * col[source]"""
        for M in (self._A, self._V):
            for row in M:
                row[target] += k * row[source]

    def _negate_row(self, i: int):
        for M in (self._A, self._U):
            M[i] = [-a for a in M[i]]

    # -- algorithm ------------------------------------------------------------

    def _smallest(self, t: int, cells) -> Tuple[int, int]:
        best = None
        for i, j in cells:
            v = abs(self._A[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
        return None if best is None else (best[1], best[2])

    def _step(self, t: int) -> bool:
        """Diagonalize position t. Returns False once the remaining block is zero."""
        A = self._A
        pivot = self._smallest(t, ((i, j) for i in range(t, self.rows) for j in range(t, self.cols)))
        if pivot is None:
            return False
        self._swap_rows(t, pivot[0])
        self._swap_cols(t, pivot[1])

        while True:
            p = A[t][t]
            for i in range(t + 1, self.rows):
                if A[i][t]:
                    self._add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, self.cols):
                if A[t][j]:
                    self._add_col(j, t, -(A[t][j] // p))

            cross = [(i, t) for i in range(t + 1, self.rows)] + [(t, j) for j in range(t + 1, self.cols)]
            leftover = self._smallest(t, cross)
            if leftover is not None:
                self._swap_rows(t, leftover[0])
                self._swap_cols(t, leftover[1])
                continue

            # divisibility chain
            bad = next(
                ((i, j) for i in range(t + 1, self.rows) for j in range(t + 1, self.cols)
                 if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            self._add_row(t, bad[0], 1)

        if A[t][t] < 0:
            self._negate_row(t)
        return True

    def run(self) -> "SmithNormalForm":
        if not self._done:
            t = 0
            while t < min(self.rows, self.cols) and self._step(t):
                t += 1
            self._done = True
        return self

    @property
    def D(self) -> np.ndarray:
        return np.array(self.run()._A, dtype=object).reshape(self.rows, self.cols)

    @property
    def U(self) -> np.ndarray:
        return np.array(self.run()._U, dtype=object).reshape(self.rows, self.rows)

    @property
    def V(self) -> np.ndarray:
        return np.array(self.run()._V, dtype=object).reshape(self.cols, self.cols)

    @property
    def diagonal(self) -> List[int]:
        self.run()
        return [self._A[i][i] for i in range(min(self.rows, self.cols))]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Compute (D, U, V) with U @ M @ V = D.

    Args:
        matrix: Integer matrix (list of rows or 2-d array)

    Returns:
        Tuple of numpy object arrays (D, U, V)
    """
    snf = SmithNormalForm(matrix).run()
    return snf.D, snf.U, snf.V


def invariant_factors(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Non-zero diagonal entries of the Smith form."""
    return [d for d in SmithNormalForm(matrix).diagonal if d]


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    return len(invariant_factors(matrix)) if len(matrix) else 0


def lattice_quotient(n: int, generators: Sequence[Sequence[int]]) -> Tuple[List[int], int]:
    """
    Structure of Z^n / <generators>.

    Returns:
        (torsion invariant factors > 1, free rank)
    """
    gens = [list(g) for g in generators]
    if not gens:
        return [], n
    factors = invariant_factors(gens)
    return [d for d in factors if d > 1], n - len(factors)


def integer_kernel(matrix: Sequence[Sequence[int]], n: int) -> List[List[int]]:
    """
    Basis of the saturated lattice {x in Z^n : M x = 0}.

    Args:
        matrix: k x n integer matrix (k may be 0)
        n: number of columns

    Returns:
        List of kernel basis vectors (columns of V past the rank)
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    snf = SmithNormalForm(rows).run()
    rank = len([d for d in snf.diagonal if d])
    V = snf.V
    return [[int(V[i, j]) for i in range(n)] for j in range(rank, n)]
