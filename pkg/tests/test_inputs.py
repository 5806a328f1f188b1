"""
Tests for reading block and parameter files.
"""

from fractions import Fraction

import pytest

from src.hii_principal.exceptions import InvalidBlock
from src.hii_principal.tools.inputs import (
    load_json,
    optional_positive_int,
    parse_fraction,
    parse_levels,
    parse_monomial,
    parse_q,
)
from src.hii_principal.tools.scalars import Monomial


class TestParseMonomial:
    """Printed monomials."""

    @pytest.mark.parametrize("text,expected", [
        ("1", Monomial()),
        ("-1", Monomial(0, Fraction(1, 2))),
        ("e(1/3)", Monomial(0, Fraction(1, 3))),
        ("q", Monomial(2)),
        ("q^(1/2)", Monomial(1)),
        ("q^-1", Monomial(-2)),
        ("e(1/4)*q^(-1)", Monomial(-2, Fraction(1, 4))),
        ({"zeta": "3/4", "qhalf": 1}, Monomial(2, Fraction(3, 4))),
        ({"zeta": "1/4", "qhalf": "1/2"}, Monomial(1, Fraction(1, 4))),
        ({"zeta": "1/6", "qhalf": "-3/2"}, Monomial(-3, Fraction(1, 6))),
        ({"qhalf": "-1"}, Monomial(-2)),
    ])
    def test_forms(self, text, expected):
        """Test the printed and dict forms, with qhalf read as a half-integer exponent."""
        assert parse_monomial(text) == expected

    def test_round_trip_of_printed_form(self):
        """Test that printed monomials parse back."""
        m = Monomial(-3, Fraction(1, 6))
        assert parse_monomial(str(m)) == m

    @pytest.mark.parametrize("text", [
        "x", "q^(1/3)", "e(a)",
        {"zeta": "1/4", "qhalf": "1/3"}, {"qhalf": "half"},
    ])
    def test_rejected(self, text):
        """Test that malformed monomials raise InvalidBlock."""
        with pytest.raises(InvalidBlock):
            parse_monomial(text)


class TestScalarsAndLevels:
    """Fractions, q and filtrations."""

    def test_fraction(self):
        """Test reading rationals."""
        assert parse_fraction(" 3/6 ") == Fraction(1, 2)
        with pytest.raises(InvalidBlock):
            parse_fraction("1/0")

    def test_q(self):
        """Test reading q with a default."""
        assert parse_q(None, Fraction(5)) == 5
        assert parse_q("7", Fraction(5)) == 7
        with pytest.raises(InvalidBlock):
            parse_q("1/2", Fraction(5))

    def test_levels(self):
        """Test reading inertial levels."""
        assert parse_levels(None, 2) == [[]]
        levels = parse_levels({"levels": [[["1/2", "0"]], []]}, 2)
        assert levels == [[[Fraction(1, 2), Fraction(0)]], []]

    def test_level_length_checked(self):
        """Test that generators must have length rank."""
        with pytest.raises(InvalidBlock):
            parse_levels([[["1/2"]]], 2)

    def test_positive_int(self):
        """Test optional positive integer fields."""
        assert optional_positive_int({}, "dim_rho") is None
        assert optional_positive_int({"dim_rho": 2}, "dim_rho") == 2
        for bad in (0, True, "2"):
            with pytest.raises(InvalidBlock):
                optional_positive_int({"dim_rho": bad}, "dim_rho")


class TestLoadJson:
    """Files on disk."""

    def test_missing(self, tmp_path):
        """Test a missing file."""
        with pytest.raises(InvalidBlock):
            load_json(tmp_path / "nope.json")

    def test_invalid(self, tmp_path):
        """Test a file that is not JSON."""
        path = tmp_path / "bad.json"
        path.write_text("{ not json")
        with pytest.raises(InvalidBlock):
            load_json(path)

    def test_not_an_object(self, tmp_path):
        """Test JSON that is not an object."""
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(InvalidBlock):
            load_json(path)
