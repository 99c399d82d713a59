"""
Unit tests for the Bernoulli, Euler and central factorial tables.
sympy is used only as an independent oracle.
"""
from fractions import Fraction

import pytest
import sympy
from sympy.polys.appellseqs import bernoulli_poly as sympy_bernoulli_poly
from sympy.polys.appellseqs import euler_poly as sympy_euler_poly

from powersums.exact_algebra import Polynomial
from powersums.special_sequences import (
    bernoulli_addition_check,
    bernoulli_derivative_check,
    bernoulli_difference_check,
    bernoulli_fault,
    bernoulli_half_check,
    bernoulli_number,
    bernoulli_numbers,
    bernoulli_poly,
    bernoulli_reflection_check,
    central_factorial_check,
    central_factorial_number,
    central_factorial_numbers,
    central_factorial_poly,
    euler_addition_check,
    euler_number,
    euler_number_check,
    euler_poly,
    odd_power_factorial_check,
    sequence_table,
)

SX = sympy.Symbol("x")


def as_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def as_polynomial(expr) -> Polynomial:
    coeffs = sympy.Poly(expr, SX).all_coeffs()
    return Polynomial("x", [as_fraction(c) for c in reversed(coeffs)])


class TestBernoulliNumbers:
    """Test Bernoulli numbers against sympy."""

    def test_first_values(self):
        """Test B_0..B_4 with the B_1 = -1/2 convention."""
        assert [bernoulli_number(n) for n in range(5)] == [
            Fraction(1), Fraction(-1, 2), Fraction(1, 6), Fraction(0), Fraction(-1, 30)
        ]

    @pytest.mark.parametrize("n", [0] + list(range(2, 31)))
    def test_matches_sympy(self, n):
        """Test B_n agrees with sympy away from n = 1, where the conventions differ."""
        assert bernoulli_number(n) == as_fraction(sympy.bernoulli(n))

    def test_table_grows_on_demand(self):
        """Test the table extends to the requested index."""
        table = bernoulli_numbers(12)
        assert table.max_index >= 12
        assert table.number(12) == Fraction(-691, 2730)


class TestBernoulliPolynomials:
    """Test Bernoulli polynomials and their identities."""

    @pytest.mark.parametrize("n", range(0, 16))
    def test_matches_sympy(self, n):
        """Test B_n(x) coefficient by coefficient."""
        assert bernoulli_poly(n) == as_polynomial(sympy_bernoulli_poly(n, SX))

    def test_b1(self):
        """Test B_1(x) = x - 1/2."""
        assert bernoulli_poly(1) == Polynomial("x", [Fraction(-1, 2), 1])

    @pytest.mark.parametrize("check", [
        bernoulli_difference_check,
        bernoulli_reflection_check,
        bernoulli_derivative_check,
        bernoulli_addition_check,
    ])
    @pytest.mark.parametrize("n", range(0, 11))
    def test_identities_hold(self, check, n):
        """Test the difference, reflection, derivative and addition identities."""
        assert check(n).passed

    @pytest.mark.parametrize("n", range(0, 7))
    def test_half_values(self, n):
        """Test B_n(1/2) in terms of B_n."""
        assert bernoulli_half_check(n).passed


class TestBernoulliFault:
    """Test the sign-flip fault used by the negative self-test."""

    def test_fault_breaks_difference_and_half_checks(self):
        """Test a flipped B_2 is caught by the difference and half-value checks."""
        with bernoulli_fault(2):
            assert bernoulli_number(2) == Fraction(-1, 6)
            assert not bernoulli_difference_check(3).passed
            assert not bernoulli_half_check(1).passed

    def test_fault_invisible_to_addition_and_derivative(self):
        """Test checks that only use internal consistency still pass under the fault."""
        with bernoulli_fault(2):
            assert bernoulli_addition_check(4).passed
            assert bernoulli_derivative_check(4).passed

    def test_fault_is_undone(self):
        """Test the original table is restored on exit."""
        with bernoulli_fault(2):
            pass
        assert bernoulli_number(2) == Fraction(1, 6)
        assert bernoulli_difference_check(3).passed

    def test_counterexample_recorded(self):
        """Test a failing check carries both sides of the comparison."""
        with bernoulli_fault(2):
            result = bernoulli_difference_check(3)
        assert set(result.counterexample) == {"expected", "actual"}
        assert result.to_dict()["pass"] is False


class TestEuler:
    """Test Euler polynomials and numbers."""

    def test_first_polynomials(self):
        """Test E_1, E_2 and E_3."""
        assert euler_poly(1) == Polynomial("x", [Fraction(-1, 2), 1])
        assert euler_poly(2) == Polynomial("x", [0, -1, 1])
        assert euler_poly(3) == Polynomial("x", [Fraction(1, 4), 0, Fraction(-3, 2), 1])

    @pytest.mark.parametrize("n", range(0, 16))
    def test_polynomials_match_sympy(self, n):
        """Test E_n(x) against sympy."""
        assert euler_poly(n) == as_polynomial(sympy_euler_poly(n, SX))

    @pytest.mark.parametrize("n", range(0, 21))
    def test_numbers_match_sympy(self, n):
        """Test E_n = 2^n E_n(1/2) against sympy's Euler numbers."""
        assert euler_number(n) == as_fraction(sympy.euler(n))

    @pytest.mark.parametrize("n", range(0, 11))
    def test_identities_hold(self, n):
        """Test the addition theorem and vanishing values."""
        assert euler_addition_check(n).passed
        assert euler_number_check(n).passed


class TestCentralFactorials:
    """Test central factorial polynomials and numbers."""

    def test_polynomial(self):
        """Test x^[4] = x^4 - x^2."""
        assert str(central_factorial_poly(4)) == "x^4 - x^2"

    @pytest.mark.parametrize("m, k, expected", [
        (4, 2, Fraction(1)),
        (6, 4, Fraction(5)),
        (8, 4, Fraction(21)),
        (8, 6, Fraction(14)),
        (3, 1, Fraction(1, 4)),
        (5, 5, Fraction(1)),
        (5, 4, Fraction(0)),
    ])
    def test_known_values(self, m, k, expected):
        """Test tabulated central factorial numbers."""
        assert central_factorial_number(m, k) == expected

    def test_out_of_range_is_zero(self):
        """Test T(m, k) = 0 outside 1 <= k <= m."""
        assert central_factorial_number(3, 0) == 0
        assert central_factorial_number(3, 4) == 0

    def test_invalid_row(self):
        """Test row 0 is rejected."""
        with pytest.raises(ValueError):
            central_factorial_numbers(0)

    @pytest.mark.parametrize("m", range(1, 13))
    def test_expansion_identity(self, m):
        """Test x^m rebuilds from the central factorial basis."""
        assert central_factorial_check(m).passed

    @pytest.mark.parametrize("m", range(1, 7))
    def test_odd_power_identity(self, m):
        """Test odd powers rebuild from falling factorials weighted by T(2m, 2k)."""
        assert odd_power_factorial_check(m).passed


class TestSequenceTable:
    """Test the table handed to the seq command."""

    def test_central_rows(self):
        """Test the first three central factorial rows."""
        assert sequence_table("central", 3)["rows"] == [
            [Fraction(1)],
            [Fraction(0), Fraction(1)],
            [Fraction(1, 4), Fraction(0), Fraction(1)],
        ]

    def test_bernoulli_table(self):
        """Test numbers and polynomials come out together."""
        table = sequence_table("bernoulli", 4)
        assert len(table["numbers"]) == 5
        assert table["polys"][2] == Polynomial("x", [Fraction(1, 6), -1, 1])

    def test_unknown_kind(self):
        """Test an unknown kind raises."""
        with pytest.raises(ValueError, match="Unknown sequence kind"):
            sequence_table("fibonacci", 3)
