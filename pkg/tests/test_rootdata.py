"""
Tests for root data, duality and Weyl groups.
"""

import pytest

from src.hii_principal.exceptions import InvalidDatum, SizeLimitExceeded, UnknownType
from src.hii_principal.rootdata import (
    center_is_connected,
    condition_check,
    construct_root_datum,
    decompose,
    dual_datum,
    is_closed_subsystem,
    pairing,
    subsystem_datum,
    validate_datum,
    weyl_group,
)


class TestConstruction:
    """Named types, GL_n, tori and explicit data."""

    @pytest.mark.parametrize("name,roots", [
        ("A1", 2), ("A2", 6), ("B2", 8), ("C2", 8), ("G2", 12),
        ("A3", 12), ("B3", 18), ("C3", 18), ("D4", 24), ("F4", 48), ("A1xA1", 4),
    ])
    def test_root_counts(self, name, roots):
        """Test the number of roots of each named type."""
        for lattice in ("sc", "ad"):
            rd = construct_root_datum(name, lattice)
            assert len(rd.roots) == roots
            assert rd.num_positive == roots // 2

    def test_pairing_is_two(self):
        """Test that every root pairs to 2 with its coroot."""
        rd = construct_root_datum("G2")
        for a, av in zip(rd.roots, rd.coroots):
            assert pairing(a, av) == 2

    def test_simple_roots_first(self):
        """Test that simple roots come first."""
        rd = construct_root_datum("B3", "ad")
        assert rd.simple_indices == (0, 1, 2)
        assert rd.cartan_matrix() == [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]

    def test_gl(self):
        """Test the GL3 datum."""
        rd = construct_root_datum("GL3")
        assert rd.rank == 3
        assert len(rd.roots) == 6
        assert rd.dimension == 9
        assert rd.semisimple_rank == 2

    def test_torus(self):
        """Test a datum without roots."""
        rd = construct_root_datum("T2")
        assert rd.roots == ()
        assert rd.dimension == 2

    def test_dict_spec(self):
        """Test a datum given as a dict."""
        rd = construct_root_datum({"type": "A1", "lattice": "adjoint"})
        assert rd.coroots[rd.simple_indices[0]] == (2,)

    def test_explicit(self):
        """SL2 written out by hand."""
        rd = construct_root_datum({"roots": [[2], [-2]], "coroots": [[1], [-1]]})
        assert rd.positive == (True, False)
        assert rd.simple_indices == (0,)

    def test_explicit_bad_pairing(self):
        """Test that an explicit datum with a bad pairing is rejected."""
        with pytest.raises(InvalidDatum):
            construct_root_datum({"roots": [[2], [-2]], "coroots": [[2], [-2]]})

    def test_unknown_type(self):
        """Test that an unknown type is rejected."""
        with pytest.raises(UnknownType):
            construct_root_datum("H3")
        with pytest.raises(UnknownType):
            construct_root_datum("A2", "middle")

    def test_custom_basis(self):
        """A lattice that does not contain the root lattice is rejected."""
        with pytest.raises(InvalidDatum):
            construct_root_datum("A1", {"basis": [[4]]})

    def test_validate_catches_missing_negative(self):
        """Test that validation needs negatives of roots."""
        rd = construct_root_datum("A1")
        broken = type(rd)(rd.rank, rd.roots[:1], rd.coroots[:1], rd.simple_indices, rd.positive[:1])
        with pytest.raises(InvalidDatum):
            validate_datum(broken)


class TestDuality:
    """Swapping roots and coroots."""

    def test_dual_of_b_is_c(self):
        """Test that the dual of B3 is C3."""
        rd = construct_root_datum("B3", "sc")
        dual = dual_datum(rd)
        assert dual.roots == rd.coroots
        assert [c.letter for c in decompose(rd)] == ["B"]
        assert [c.letter for c in decompose(dual)] == ["C"]

    def test_double_dual(self):
        """Test that dualizing twice is the identity."""
        rd = construct_root_datum("G2", "ad")
        assert dual_datum(dual_datum(rd)) == rd

    def test_adjoint_dual_is_simply_connected(self):
        """PGL2 has connected center, SL2 does not."""
        assert center_is_connected(construct_root_datum("A1", "ad"))
        assert not center_is_connected(construct_root_datum("A1", "sc"))
        assert center_is_connected(construct_root_datum("GL2"))


class TestWeylGroup:
    """Breadth-first enumeration."""

    @pytest.mark.parametrize("name,order", [
        ("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24),
        ("B3", 48), ("C3", 48), ("A1xA1", 4), ("D4", 192),
    ])
    def test_orders(self, name, order):
        """Test Weyl group orders."""
        assert weyl_group(construct_root_datum(name)).order == order

    @pytest.mark.slow
    def test_f4_order(self):
        """Test the order of W(F4)."""
        assert weyl_group(construct_root_datum("F4")).order == 1152

    def test_size_limit(self):
        """Test that the order bound raises SizeLimitExceeded."""
        with pytest.raises(SizeLimitExceeded):
            weyl_group(construct_root_datum("B3"), max_order=10)

    def test_lengths_and_longest(self):
        """Test word lengths and the longest element."""
        W = weyl_group(construct_root_datum("A2"))
        assert W.identity.is_identity()
        assert W.longest_element.length == 3
        lengths = [w.length for w in W]
        assert lengths == sorted(lengths)

    def test_multiply_and_inverse(self):
        """Test that w * w^-1 is the identity."""
        W = weyl_group(construct_root_datum("B2"))
        for w in W:
            assert W.multiply(w, W.inverse(w)).is_identity()

    def test_reflections_generate(self):
        """Test that simple reflections generate W."""
        rd = construct_root_datum("G2")
        W = weyl_group(rd)
        gens = [W.reflection(i) for i in rd.simple_indices]
        assert len(W.generated_by(gens)) == 12
        assert len(W.generated_by([W.reflection(rd.simple_indices[0])])) == 2

    def test_reflection_subgroup_cached(self):
        """Test that reflection subgroups are memoized by their index set."""
        rd = construct_root_datum("G2")
        W = weyl_group(rd)
        full = W.reflection_subgroup(rd.simple_indices)
        assert len(full) == 12
        assert W.reflection_subgroup(reversed(rd.simple_indices)) is full
        assert len(W.reflection_subgroup([])) == 1

    def test_memoized_computes_once(self):
        """Test that memoized calls compute only on the first lookup."""
        W = weyl_group(construct_root_datum("A2"))
        calls = []
        assert W.memoized("k", lambda: calls.append(1) or 5) == 5
        assert W.memoized("k", lambda: calls.append(1) or 6) == 5
        assert calls == [1]


class TestSubsystems:
    """Closed subsystems."""

    def test_short_roots_of_c2(self):
        """The short roots of C2 are closed in the dual B2 system but not in C2."""
        rd = construct_root_datum("C2")
        short = [i for i, av in enumerate(rd.coroots) if sum(abs(x) for x in av) == 2]
        assert len(short) == 4
        assert is_closed_subsystem(dual_datum(rd), short)
        assert not is_closed_subsystem(rd, short)

    def test_subsystem_datum(self):
        """Test the datum of a rank-one subsystem."""
        rd = construct_root_datum("A2")
        pos = rd.simple_indices[0]
        sub = subsystem_datum(rd, [pos, rd.negative_of(pos)])
        assert len(sub.roots) == 2
        assert sub.simple_indices == (0,)

    def test_not_negation_closed(self):
        """Test that a subset without negatives is not closed."""
        rd = construct_root_datum("A2")
        assert not is_closed_subsystem(rd, [0])


class TestConditionCheck:
    """Residue characteristic table."""

    def test_a2(self):
        """Test the residue characteristic condition for A2."""
        rd = construct_root_datum("A2")
        assert not condition_check(rd, 3).verdict
        assert condition_check(rd, 5).verdict

    def test_product(self):
        """Test the condition on a product datum."""
        report = condition_check(construct_root_datum("A1xA1"), 3)
        assert report.to_dict()["factors"] == ["A1", "A1"]
        assert report.verdict

    def test_g2(self):
        """Test the condition for G2."""
        assert not condition_check(construct_root_datum("G2"), 5).verdict
        assert condition_check(construct_root_datum("G2"), 7).verdict

    def test_not_prime(self):
        """Test that p must be prime."""
        with pytest.raises(ValueError):
            condition_check(construct_root_datum("A1"), 9)
