"""
Root Data
=========
Based root data of split reductive groups, their duals, Weyl group
enumeration, closed subsystems, the center-connectedness test and the
residue-characteristic condition on p.

Conventions
-----------
X* and X_* are both identified with Z^n and paired by the dot product.
Roots live in X*, coroots in X_*, matched by index. The roots of the dual
group are the stored coroot vectors; dual_datum just swaps the two lists.

A Weyl element is stored as the integer matrix of its action on X*
(column vectors), together with one reduced word and the permutation it
induces on root indices.
"""

from __future__ import annotations

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np
import sympy

from .config import get_settings
from .exceptions import InvalidDatum, SizeLimitExceeded, UnknownType
from .tools.lattice import integer_rank, invariant_factors

logger = logging.getLogger(__name__)

T = TypeVar("T")

Vector = Tuple[int, ...]


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """The standard pairing X* x X_* -> Z."""
    return sum(a * b for a, b in zip(x, y))


# =============================================================================
# BASED ROOT DATUM
# =============================================================================

@dataclass(frozen=True)
class BasedRootDatum:
    """
    (X*, Phi, X_*, Phi^vee) with a chosen positive system.

    positive[i] says whether roots[i] is positive; simple_indices lists the
    simple roots in Cartan-matrix order.
    """
    rank: int
    roots: Tuple[Vector, ...]
    coroots: Tuple[Vector, ...]
    simple_indices: Tuple[int, ...]
    positive: Tuple[bool, ...]
    name: str = field(default="", compare=False)

    @cached_property
    def _root_lookup(self) -> Dict[Vector, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def _coroot_lookup(self) -> Dict[Vector, int]:
        return {r: i for i, r in enumerate(self.coroots)}

    def root_index(self, vector: Sequence[int]) -> Optional[int]:
        return self._root_lookup.get(tuple(int(v) for v in vector))

    def coroot_index(self, vector: Sequence[int]) -> Optional[int]:
        return self._coroot_lookup.get(tuple(int(v) for v in vector))

    def negative_of(self, i: int) -> int:
        return self._root_lookup[tuple(-v for v in self.roots[i])]

    @property
    def positive_indices(self) -> List[int]:
        return [i for i, p in enumerate(self.positive) if p]

    @property
    def num_positive(self) -> int:
        return sum(self.positive)

    @property
    def dimension(self) -> int:
        """dim G = rank + |Phi|."""
        return self.rank + len(self.roots)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_indices)

    @property
    def simple_roots(self) -> List[Vector]:
        return [self.roots[i] for i in self.simple_indices]

    @property
    def simple_coroots(self) -> List[Vector]:
        return [self.coroots[i] for i in self.simple_indices]

    def cartan_matrix(self) -> List[List[int]]:
        """a_ij = <alpha_i^vee, alpha_j> on simple roots."""
        return [
            [pairing(self.coroots[i], self.roots[j]) for j in self.simple_indices]
            for i in self.simple_indices
        ]

    @cached_property
    def simple_coefficients(self) -> Tuple[Tuple[int, ...], ...]:
        """Coefficients of every root in the basis of simple roots."""
        if not self.simple_indices:
            return tuple(() for _ in self.roots)
        S = sympy.Matrix([list(self.roots[i]) for i in self.simple_indices]).T
        projector = (S.T * S).inv() * S.T
        out = []
        for root in self.roots:
            c = projector * sympy.Matrix(list(root))
            if S * c != sympy.Matrix(list(root)) or any(not x.is_integer for x in c):
                raise InvalidDatum(f"root {root} is not an integral combination of simple roots")
            out.append(tuple(int(x) for x in c))
        return tuple(out)

    def height(self, i: int) -> int:
        return sum(self.simple_coefficients[i])

    def __str__(self) -> str:
        return self.name or f"rank-{self.rank} datum with {len(self.roots)} roots"


def validate_datum(rd: BasedRootDatum) -> BasedRootDatum:
    """
    Check the root datum axioms and the base.

    Raises:
        InvalidDatum: on the first violated axiom
    """
    n = rd.rank
    if len(rd.roots) != len(rd.coroots) or len(rd.positive) != len(rd.roots):
        raise InvalidDatum("roots, coroots and positivity flags must have equal length")
    for vec in rd.roots + rd.coroots:
        if len(vec) != n:
            raise InvalidDatum(f"vector {vec} does not have length {n}")
    if len(set(rd.roots)) != len(rd.roots):
        raise InvalidDatum("duplicate roots")

    for a, av in zip(rd.roots, rd.coroots):
        if pairing(a, av) != 2:
            raise InvalidDatum(f"<{a}, {av}> = {pairing(a, av)}, expected 2")

    for i, (a, av) in enumerate(zip(rd.roots, rd.coroots)):
        j = rd.root_index(tuple(-x for x in a))
        if j is None or rd.coroots[j] != tuple(-x for x in av):
            raise InvalidDatum(f"-{a} is missing or has the wrong coroot")
        if rd.positive[i] == rd.positive[j]:
            raise InvalidDatum(f"exactly one of +-{a} must be positive")

    for i, (a, av) in enumerate(zip(rd.roots, rd.coroots)):
        for b, bv in zip(rd.roots, rd.coroots):
            image = tuple(x - pairing(b, av) * y for x, y in zip(b, a))
            co_image = tuple(x - pairing(a, bv) * y for x, y in zip(bv, av))
            k = rd.root_index(image)
            if k is None or rd.coroots[k] != co_image:
                raise InvalidDatum(f"reflection in {a} does not permute the roots")

    if rd.roots:
        if integer_rank(rd.roots) != len(rd.simple_indices):
            raise InvalidDatum("simple roots do not span the root lattice rationally")
        for i, coeffs in enumerate(rd.simple_coefficients):
            sign = 1 if rd.positive[i] else -1
            if any(sign * c < 0 for c in coeffs):
                raise InvalidDatum(f"root {rd.roots[i]} has mixed-sign simple coefficients")
    elif rd.simple_indices:
        raise InvalidDatum("simple roots given for an empty root system")
    return rd


# =============================================================================
# NAMED TYPES
# =============================================================================

_TYPE_PATTERN = re.compile(r"^([A-G])(\d+)$")
_GL_PATTERN = re.compile(r"^GL(\d+)$")
_TORUS_PATTERN = re.compile(r"^T(\d+)$")

_LATTICE_ALIASES = {
    "sc": "sc", "simply-connected": "sc", "simply_connected": "sc",
    "ad": "ad", "adjoint": "ad",
}

_E_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]


def cartan_matrix_of_type(letter: str, n: int) -> List[List[int]]:
    """
    Cartan matrix a_ij = <alpha_i^vee, alpha_j> in Bourbaki numbering.

    Raises:
        UnknownType: for an unsupported (letter, n)
    """
    valid = {
        "A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 4,
        "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
    }
    if not valid.get(letter, False):
        raise UnknownType(f"unsupported Cartan type {letter}{n}")

    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1):
        a[i][j], a[j][i] = aij, aji

    if letter in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if letter == "B":
            link(n - 2, n - 1, -1, -2)
        elif letter == "C":
            link(n - 2, n - 1, -2, -1)
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        for i, j in _E_EDGES:
            if i < n and j < n:
                link(i, j)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -3, -1)
    return a


def _generate_roots(cartan: List[List[int]]) -> List[Tuple[Vector, Vector, Vector]]:
    """
    Orbit of the simple roots under the simple reflections.

    Roots are in fundamental-weight coordinates, coroots in simple-coroot
    coordinates; each entry also carries simple-root coefficients.
    """
    r = len(cartan)
    simple = [tuple(cartan[i][j] for i in range(r)) for j in range(r)]
    unit = [tuple(int(i == j) for i in range(r)) for j in range(r)]

    seen: Dict[Vector, Tuple[Vector, Vector]] = {}
    queue = deque()
    for j in range(r):
        seen[simple[j]] = (unit[j], unit[j])
        queue.append(simple[j])

    while queue:
        root = queue.popleft()
        coroot, coeffs = seen[root]
        for i in range(r):
            k = root[i]
            m = sum(coroot[s] * cartan[s][i] for s in range(r))
            image = tuple(x - k * y for x, y in zip(root, simple[i]))
            if image in seen:
                continue
            co_image = tuple(x - m * (s == i) for s, x in enumerate(coroot))
            c_image = tuple(x - k * (s == i) for s, x in enumerate(coeffs))
            seen[image] = (co_image, c_image)
            queue.append(image)

    return [(root, co, c) for root, (co, c) in seen.items()]


def _default_basis(letter: str, n: int, lattice: str) -> List[List[int]]:
    """
    Basis rows of X* in fundamental-weight coordinates.

    sc is the weight lattice and ad the root lattice, except that C_n (sc)
    and B_n (ad) use Bourbaki's epsilon basis, where the lattice is Z^n.
    """
    if letter == "C" and lattice == "sc":
        return [[1 if k == j else (-1 if k == j - 1 else 0) for k in range(n)] for j in range(n)]
    if letter == "B" and lattice == "ad":
        rows = [[1 if k == j else (-1 if k == j - 1 else 0) for k in range(n)] for j in range(n - 1)]
        rows.append([2 if k == n - 1 else (-1 if k == n - 2 else 0) for k in range(n)])
        return rows
    if lattice == "sc":
        return [[int(i == j) for j in range(n)] for i in range(n)]
    cartan = cartan_matrix_of_type(letter, n)
    return [[cartan[i][j] for i in range(n)] for j in range(n)]


def _block_diagonal(blocks: List[List[List[int]]]) -> List[List[int]]:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[offset + i][offset + j] = v
        offset += len(b)
    return out


def _parse_factors(type_name: str) -> List[Tuple[str, int]]:
    factors = []
    for part in type_name.replace(" ", "").split("x"):
        m = _TYPE_PATTERN.match(part)
        if not m:
            raise UnknownType(f"cannot parse Cartan type '{part}' in '{type_name}'")
        factors.append((m.group(1), int(m.group(2))))
    return factors


def _named_datum(type_name: str, lattice) -> BasedRootDatum:
    factors = _parse_factors(type_name)
    cartans = [cartan_matrix_of_type(letter, n) for letter, n in factors]
    cartan = _block_diagonal(cartans)
    n = len(cartan)

    if isinstance(lattice, dict) and "basis" in lattice:
        basis = [[int(x) for x in row] for row in lattice["basis"]]
        label = "basis"
    else:
        key = _LATTICE_ALIASES.get(str(lattice).lower())
        if key is None:
            raise UnknownType(f"unknown lattice choice {lattice!r}")
        basis = _block_diagonal([_default_basis(l, k, key) for l, k in factors])
        label = key
    if len(basis) != n or any(len(row) != n for row in basis):
        raise InvalidDatum(f"basis must be {n} x {n}")

    B = sympy.Matrix(basis)
    if B.det() == 0:
        raise InvalidDatum("basis is degenerate")
    Bt_inv = B.T.inv()

    generated = _generate_roots(cartan)
    generated.sort(key=lambda e: (sum(e[2]) < 0, abs(sum(e[2])), tuple(-abs(c) for c in e[2])))

    roots, coroots, positive = [], [], []
    for root, coroot, coeffs in generated:
        y = Bt_inv * sympy.Matrix(list(root))
        if any(not v.is_integer for v in y):
            raise InvalidDatum("lattice does not contain the root lattice")
        roots.append(tuple(int(v) for v in y))
        coroots.append(tuple(int(v) for v in B * sympy.Matrix(list(coroot))))
        positive.append(sum(coeffs) > 0)

    # simple roots come first (height 1, ordered by node)
    simple = tuple(range(n))
    name = f"{type_name} ({label})"
    rd = BasedRootDatum(n, tuple(roots), tuple(coroots), simple, tuple(positive), name)
    logger.debug("Built %s with %d roots", name, len(roots))
    return rd


def _gl_datum(n: int) -> BasedRootDatum:
    roots, positive = [], []
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    pairs.sort(key=lambda p: (p[0] > p[1], abs(p[1] - p[0]), min(p)))
    for i, j in pairs:
        roots.append(tuple(1 if k == i else (-1 if k == j else 0) for k in range(n)))
        positive.append(i < j)
    simple = tuple(k for k, (i, j) in enumerate(pairs) if j == i + 1)
    return BasedRootDatum(n, tuple(roots), tuple(roots), simple, tuple(positive), f"GL{n}")


def _explicit_datum(spec: dict) -> BasedRootDatum:
    roots = [tuple(int(x) for x in r) for r in spec.get("roots", [])]
    coroots = [tuple(int(x) for x in r) for r in spec.get("coroots", [])]
    if len(roots) != len(coroots):
        raise InvalidDatum("roots and coroots must have the same length")
    if "rank" in spec:
        n = int(spec["rank"])
    elif roots:
        n = len(roots[0])
    else:
        raise InvalidDatum("an empty root system needs an explicit 'rank'")

    for a, av in zip(roots, coroots):
        if len(a) != n or len(av) != n:
            raise InvalidDatum(f"vector length differs from rank {n}")
        if pairing(a, av) != 2:
            raise InvalidDatum(f"<{a}, {av}> = {pairing(a, av)}, expected 2")

    if "simple" in spec:
        simple = tuple(int(i) for i in spec["simple"])
        provisional = BasedRootDatum(n, tuple(roots), tuple(coroots), simple, tuple(True for _ in roots))
        positive = tuple(sum(c) > 0 for c in provisional.simple_coefficients)
    else:
        # regular functional (1, M, M^2, ...) with M beyond twice every coordinate
        bound = 2 * max((abs(x) for r in roots for x in r), default=0) + 1
        functional = [bound ** k for k in range(n)]
        positive = tuple(pairing(functional, r) > 0 for r in roots)
        pos_set = {r for r, p in zip(roots, positive) if p}
        decomposable = {
            tuple(x + y for x, y in zip(a, b)) for a in pos_set for b in pos_set
        }
        simple = tuple(i for i, r in enumerate(roots) if positive[i] and r not in decomposable)

    rd = BasedRootDatum(n, tuple(roots), tuple(coroots), simple, positive, spec.get("name", "explicit"))
    return validate_datum(rd)


def construct_root_datum(spec: Union[str, dict], lattice: Union[str, dict] = "sc") -> BasedRootDatum:
    """
    Build and validate a based root datum.

    Args:
        spec: A type name ("B2", "A1xA1", "GL2", "T1"), a dict
            {"type": ..., "lattice": ...}, or explicit
            {"roots": [...], "coroots": [...], "rank"?: n, "simple"?: [...]}
        lattice: "sc" | "ad" | {"basis": rows in fundamental-weight coordinates},
            used when spec is a type name

    Returns:
        BasedRootDatum

    Raises:
        InvalidDatum, UnknownType
    """
    if isinstance(spec, dict):
        if "type" in spec:
            return construct_root_datum(spec["type"], spec.get("lattice", lattice))
        if "roots" in spec or "rank" in spec:
            return _explicit_datum(spec)
        raise InvalidDatum("datum spec needs 'type' or 'roots'")

    name = str(spec).strip()
    m = _GL_PATTERN.match(name)
    if m:
        return validate_datum(_gl_datum(int(m.group(1))))
    m = _TORUS_PATTERN.match(name)
    if m:
        n = int(m.group(1))
        return BasedRootDatum(n, (), (), (), (), f"T{n}")
    return validate_datum(_named_datum(name, lattice))


def dual_datum(rd: BasedRootDatum) -> BasedRootDatum:
    """Swap X* with X_* and roots with coroots; positivity is kept."""
    name = rd.name[5:-1] if rd.name.startswith("dual(") else f"dual({rd.name})"
    return BasedRootDatum(rd.rank, rd.coroots, rd.roots, rd.simple_indices, rd.positive, name)


def subsystem_datum(rd: BasedRootDatum, subset: Iterable[int], name: str = "") -> BasedRootDatum:
    """
    Based root datum (X*, Psi, X_*, Psi^vee) on a subset of the roots.

    The positive system is Phi+ restricted to the subset; simple roots are
    its indecomposable positive elements.
    """
    indices = sorted(set(subset), key=lambda i: (not rd.positive[i], i))
    roots = tuple(rd.roots[i] for i in indices)
    coroots = tuple(rd.coroots[i] for i in indices)
    positive = tuple(rd.positive[i] for i in indices)
    pos_set = {r for r, p in zip(roots, positive) if p}
    sums = {tuple(x + y for x, y in zip(a, b)) for a in pos_set for b in pos_set}
    simple = tuple(k for k, r in enumerate(roots) if positive[k] and r not in sums)
    return BasedRootDatum(rd.rank, roots, coroots, simple, positive, name or f"sub({rd.name})")


# =============================================================================
# WEYL GROUP
# =============================================================================

@dataclass(frozen=True, eq=False)
class WeylElement:
    """Weyl group element: matrix on X*, a reduced word, and its root permutation."""
    matrix: np.ndarray
    word: Tuple[int, ...]
    perm: Tuple[int, ...]

    @property
    def key(self) -> bytes:
        return self.matrix.tobytes()

    @property
    def length(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def act(self, x: Sequence[int]) -> Vector:
        return tuple(int(v) for v in self.matrix @ np.array(x, dtype=np.int64))

    def act_torsion(self, coords: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        """Action on X* (x) Q/Z."""
        return tuple(
            sum((int(self.matrix[i, j]) * Fraction(coords[j]) for j in range(len(coords))), Fraction(0)) % 1
            for i in range(len(coords))
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)


def reflection_matrix(rd: BasedRootDatum, i: int) -> np.ndarray:
    """s_alpha(x) = x - <x, alpha^vee> alpha as a matrix on X*."""
    a = np.array(rd.roots[i], dtype=np.int64)
    av = np.array(rd.coroots[i], dtype=np.int64)
    return np.eye(rd.rank, dtype=np.int64) - np.outer(a, av)


def _root_permutation(rd: BasedRootDatum, matrix: np.ndarray) -> Tuple[int, ...]:
    perm = []
    for root in rd.roots:
        k = rd.root_index(matrix @ np.array(root, dtype=np.int64))
        if k is None:
            raise InvalidDatum("matrix does not permute the roots")
        perm.append(k)
    return tuple(perm)


@dataclass(frozen=True, eq=False)
class WeylGroup:
    """Finite Weyl group enumerated in breadth-first (length) order."""
    datum: BasedRootDatum
    elements: Tuple[WeylElement, ...]

    @cached_property
    def _index(self) -> Dict[bytes, int]:
        return {w.key: i for i, w in enumerate(self.elements)}

    @cached_property
    def _memo(self) -> Dict[Hashable, object]:
        return {}

    def memoized(self, key: Hashable, compute: Callable[[], T]) -> T:
        """
        Value of compute() cached on this group under key. Racing threads may
        both compute; the results are equal.
        """
        memo = self._memo
        if key not in memo:
            memo[key] = compute()
        return memo[key]  # type: ignore[return-value]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    def element_of(self, matrix: np.ndarray) -> WeylElement:
        return self.elements[self._index[np.asarray(matrix, dtype=np.int64).tobytes()]]

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.element_of(a.matrix @ b.matrix)

    def inverse(self, a: WeylElement) -> WeylElement:
        matrix = self.identity.matrix
        for pos in reversed(a.word):
            matrix = matrix @ reflection_matrix(self.datum, self.datum.simple_indices[pos])
        return self.element_of(matrix)

    def reflection(self, root_index: int) -> WeylElement:
        return self.element_of(reflection_matrix(self.datum, root_index))

    @cached_property
    def longest_element(self) -> WeylElement:
        return max(self.elements, key=lambda w: w.length)

    def generated_by(self, generators: Sequence[WeylElement]) -> List[WeylElement]:
        """Subgroup closure of a list of elements."""
        group = {self.identity.key: self.identity}
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for s in generators:
                h = self.multiply(g, s)
                if h.key not in group:
                    group[h.key] = h
                    queue.append(h)
        return list(group.values())

    def reflection_subgroup(self, root_indices: Iterable[int]) -> List[WeylElement]:
        """Subgroup generated by the reflections in the given roots, cached per index set."""
        key = frozenset(root_indices)
        return self.memoized(
            ("reflections", key), lambda: self.generated_by([self.reflection(i) for i in sorted(key)])
        )


def weyl_group(rd: BasedRootDatum, max_order: Optional[int] = None) -> WeylGroup:
    """
    Enumerate W by breadth-first right multiplication by simple reflections.

    Args:
        rd: Based root datum
        max_order: Bound on |W| (defaults to HII_MAX_WEYL_ORDER)

    Returns:
        WeylGroup whose elements carry reduced words

    Raises:
        SizeLimitExceeded: when more than max_order elements are reached
    """
    limit = max_order if max_order is not None else get_settings().max_weyl_order
    simple_mats = [reflection_matrix(rd, i) for i in rd.simple_indices]
    simple_perms = [_root_permutation(rd, m) for m in simple_mats]

    identity = WeylElement(np.eye(rd.rank, dtype=np.int64), (), tuple(range(len(rd.roots))))
    elements = [identity]
    seen = {identity.key}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for pos, (s, sp) in enumerate(zip(simple_mats, simple_perms)):
            h = g.matrix @ s
            key = h.tobytes()
            if key in seen:
                continue
            if len(elements) >= limit:
                raise SizeLimitExceeded(len(elements) + 1, limit)
            seen.add(key)
            w = WeylElement(h, g.word + (pos,), tuple(g.perm[k] for k in sp))
            elements.append(w)
            queue.append(w)

    logger.debug("Enumerated W(%s): %d elements", rd, len(elements))
    return WeylGroup(rd, tuple(elements))


# =============================================================================
# SUBSYSTEMS AND LATTICE INVARIANTS
# =============================================================================

def is_closed_subsystem(rd: BasedRootDatum, subset: Iterable[int]) -> bool:
    """True iff the subset is negation-symmetric and closed under root addition."""
    chosen = set(subset)
    for i in chosen:
        if rd.negative_of(i) not in chosen:
            return False
    for i in chosen:
        for j in chosen:
            k = rd.root_index(tuple(x + y for x, y in zip(rd.roots[i], rd.roots[j])))
            if k is not None and k not in chosen:
                return False
    return True


def center_is_connected(rd: BasedRootDatum) -> bool:
    """True iff X*/Z.Phi is torsion-free."""
    if not rd.roots:
        return True
    return all(d == 1 for d in invariant_factors(rd.roots))


# =============================================================================
# RESIDUE CHARACTERISTIC CONDITION
# =============================================================================

@dataclass
class Component:
    """Irreducible factor of a root system."""
    label: str
    letter: str
    rank: int
    simple_positions: List[int]
    root_indices: List[int]


@dataclass
class ConditionReport:
    """Outcome of the residue-characteristic check for one prime."""
    p: int
    components: List[Component]
    excluded: Dict[str, str]
    verdict: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "factors": [c.label for c in self.components],
            "excluded": self.excluded,
            "verdict": self.verdict,
        }


def _classify(cartan: List[List[int]], roots: List[Vector], coroots: List[Vector]) -> Tuple[str, int]:
    r = len(cartan)
    num_roots = len(roots)
    laced = all(cartan[i][j] in (0, -1) for i in range(r) for j in range(r) if i != j)
    if laced:
        if num_roots == r * (r + 1):
            return "A", r
        if r >= 4 and num_roots == 2 * r * (r - 1):
            return "D", r
        return "E", r
    if r == 2 and num_roots == 12:
        return "G", 2
    if r == 4 and num_roots == 48:
        return "F", 4
    # a root is short iff some root pairs with its coroot to +-2 (other than +-itself)
    short = sum(
        1 for a, av in zip(roots, coroots)
        if any(abs(pairing(b, av)) == 2 and b not in (a, tuple(-x for x in a)) for b in roots)
    )
    return ("C" if short > 2 * r else "B"), r


def decompose(rd: BasedRootDatum) -> List[Component]:
    """Split the root system into irreducible components via the Dynkin graph."""
    cartan = rd.cartan_matrix()
    r = len(cartan)
    unvisited = set(range(r))
    components = []
    while unvisited:
        start = min(unvisited)
        block, queue = [], deque([start])
        unvisited.discard(start)
        while queue:
            i = queue.popleft()
            block.append(i)
            for j in list(unvisited):
                if cartan[i][j]:
                    unvisited.discard(j)
                    queue.append(j)
        block.sort()
        members = set(block)
        roots = [
            k for k, coeffs in enumerate(rd.simple_coefficients)
            if all(c == 0 for pos, c in enumerate(coeffs) if pos not in members)
        ]
        sub = [[cartan[i][j] for j in block] for i in block]
        letter, rank = _classify(sub, [rd.roots[k] for k in roots], [rd.coroots[k] for k in roots])
        components.append(Component(f"{letter}{rank}", letter, rank, block, roots))
    return components


def _allowed(letter: str, rank: int, p: int) -> Tuple[bool, str]:
    if letter == "A":
        return p > rank + 1, f"p > {rank + 1}"
    if letter in "BCD":
        return p != 2, "p != 2"
    if letter == "F":
        return p not in (2, 3), "p != 2,3"
    if letter == "G" or (letter == "E" and rank == 6):
        return p not in (2, 3, 5), "p != 2,3,5"
    return p not in (2, 3, 5, 7), "p != 2,3,5,7"


def condition_check(rd: BasedRootDatum, p: int) -> ConditionReport:
    """
    Apply the residue-characteristic table to every irreducible factor.

    Raises:
        ValueError: if p is not prime
    """
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    components = decompose(rd)
    excluded, verdict = {}, True
    for comp in components:
        ok, rule = _allowed(comp.letter, comp.rank, p)
        excluded[comp.label] = rule
        verdict = verdict and ok
    if not verdict:
        logger.warning("p=%d violates the residue-characteristic condition for %s", p, rd)
    return ConditionReport(p, components, excluded, verdict)
