"""
Unit tests for r-fold power sums and their polynomiality in nu.
"""
from fractions import Fraction
from math import comb

import pytest

from powersums.exact_algebra import Polynomial
from powersums.rfold import (
    EVEN_POWER,
    FALLING_FACTORIAL,
    ODD_POWER,
    correction_check,
    correction_vanishes_at_zero,
    half_split_check,
    half_split_suite,
    polynomiality_check,
    polynomiality_rewrite,
    rfold_bruteforce,
    rfold_bruteforce_values,
    rfold_closed_form,
    rfold_even,
    rfold_falling,
    rfold_fit,
    rfold_odd,
    rfold_oracle_check,
    telescoping_check,
    telescoping_suite,
)

XS = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(-3, 2), Fraction(7, 3)]


class TestBruteforce:
    """Test the recursive definition."""

    def test_double_sum(self):
        """Test sum^2 i at n = 3 is 1 + 3 + 6."""
        assert rfold_bruteforce(2, lambda i: i, 3) == 10

    def test_zero_folds(self):
        """Test zero folds is the summand itself."""
        assert rfold_bruteforce(0, lambda i: i ** 2, 5) == 25

    def test_values(self):
        """Test every prefix is returned."""
        assert rfold_bruteforce_values(1, lambda i: i, 4) == [1, 3, 6, 10]

    def test_invalid(self):
        """Test negative folds and nonpositive n are rejected."""
        with pytest.raises(ValueError):
            rfold_bruteforce_values(-1, lambda i: i, 3)
        with pytest.raises(ValueError):
            rfold_bruteforce(1, lambda i: i, 0)


class TestFallingFactorialForm:
    """Test closed forms for falling factorial summands."""

    def test_gauss(self):
        """Test sum_{i<=100} i = 5050."""
        form = rfold_falling(1, 1)
        assert form.kind == FALLING_FACTORIAL
        assert form.evaluate(0, 100) == 5050

    @pytest.mark.parametrize("r", range(1, 5))
    @pytest.mark.parametrize("l", range(0, 5))
    def test_oracle(self, r, l):
        """Test against brute force over the default grid."""
        form = rfold_falling(r, l)
        assert rfold_oracle_check(form, XS, 10).passed
        assert correction_check(form).passed

    def test_zero_folds(self):
        """Test no folds leaves the falling factorial itself."""
        form = rfold_falling(0, 2)
        assert form.correction.is_zero()
        assert form.evaluate(0, 5) == 20
        assert form.evaluate(Fraction(1, 2), 1) == Fraction(3, 4)

    def test_invalid(self):
        """Test negative fold counts and lengths are refused."""
        with pytest.raises(ValueError):
            rfold_falling(-1, 1)
        with pytest.raises(ValueError):
            rfold_falling(1, -1)


class TestOddForm:
    """Test odd powers under an odd number of folds."""

    def test_triple_sum_of_n(self):
        """Test sum^3 n = C(n+3, 4)."""
        form = rfold_odd(1, 1)
        assert (form.kind, form.r, form.power) == (ODD_POWER, 3, 1)
        assert str(form.at_zero()) == "1/24*n^4 + 1/4*n^3 + 11/24*n^2 + 1/4*n"
        assert form.evaluate(0, 2) == 5
        assert form.evaluate(0, 5) == 70 == comb(8, 4)

    @pytest.mark.parametrize("r", range(0, 3))
    @pytest.mark.parametrize("m", range(1, 5))
    def test_oracle(self, r, m):
        """Test against brute force over the default grid."""
        form = rfold_odd(r, m)
        assert rfold_oracle_check(form, XS, 10).passed
        assert correction_vanishes_at_zero(form)


class TestEvenForm:
    """Test even powers under an even number of folds."""

    def test_double_sum_of_squares(self):
        """Test sum^2 n^2 at n = 1, 2, 3."""
        form = rfold_even(1, 1)
        assert (form.kind, form.r, form.power) == (EVEN_POWER, 2, 2)
        assert [form.evaluate(0, n) for n in (1, 2, 3)] == [1, 6, 20]

    def test_zero_folds(self):
        """Test zero folds gives the summand at n."""
        assert rfold_even(0, 2).evaluate(1, 2) == 81

    def test_unknown_denominator(self):
        """Test an unknown reading is rejected."""
        with pytest.raises(ValueError, match="denominator"):
            rfold_even(1, 1, "doubled")

    @pytest.mark.parametrize("r", range(0, 3))
    @pytest.mark.parametrize("m", range(1, 5))
    def test_oracle(self, r, m):
        """Test against brute force over the default grid."""
        form = rfold_even(r, m)
        assert rfold_oracle_check(form, XS, 10).passed
        assert correction_check(form).passed


class TestDispatch:
    """Test choosing a closed form or interpolation."""

    def test_matching_parities(self):
        """Test matching parities get a closed form."""
        assert rfold_closed_form(3, 1).kind == ODD_POWER
        assert rfold_closed_form(2, 4).kind == EVEN_POWER

    def test_mixed_parities(self):
        """Test mixed parities have no closed form."""
        assert rfold_closed_form(2, 1) is None
        assert rfold_closed_form(1, 2) is None

    def test_fit(self):
        """Test sum^2 n^3 at n = 3 by interpolation."""
        poly = rfold_fit(2, 3, 0)
        assert poly.variable == "n"
        assert poly.degree() == 5
        assert poly.specialize({"n": 3}) == 46

    def test_fit_beyond_samples(self):
        """Test the interpolant keeps agreeing past its sample window."""
        x = Fraction(-3, 2)
        poly = rfold_fit(1, 4, x)
        brute = rfold_bruteforce_values(1, lambda i: (x + i) ** 4, 20)
        assert [poly.specialize({"n": n}) for n in range(1, 21)] == brute


class TestIdentities:
    """Test the telescoping and half-split identities."""

    def test_telescoping(self):
        """Test a single case and the suite."""
        assert telescoping_check(3, 7)
        assert telescoping_suite(6, 20).passed

    def test_half_split(self):
        """Test a single case and the suite."""
        assert half_split_check(3)
        assert half_split_suite(6).passed


class TestPolynomiality:
    """Test rewriting x = 0 closed forms in nu."""

    def test_even(self):
        """Test sum^2 n^2 = nu(nu+1)/12 with nu = n(n+2)."""
        report = polynomiality_rewrite("even", 1, 1)
        assert report.rewritten == Polynomial("nu", [0, Fraction(1, 12), Fraction(1, 12)])
        assert report.nu == Polynomial("n", [0, 2, 1])

    def test_odd(self):
        """Test sum n = nu/2 with nu = n(n+1)."""
        assert polynomiality_rewrite("odd", 0, 1).rewritten == Polynomial("nu", [0, Fraction(1, 2)])

    def test_degree(self):
        """Test sum^3 n^3 has degree 3 in nu."""
        assert polynomiality_rewrite("odd", 1, 2).rewritten.degree() == 3

    def test_unknown_kind(self):
        """Test an unknown kind is rejected."""
        with pytest.raises(ValueError):
            polynomiality_rewrite("mixed", 1, 1)

    @pytest.mark.parametrize("kind", ["odd", "even"])
    @pytest.mark.parametrize("r", range(0, 3))
    @pytest.mark.parametrize("k", range(1, 4))
    def test_check(self, kind, r, k):
        """Test the product identity and rewrite across small cases."""
        assert polynomiality_check(kind, r, k).passed


@pytest.mark.slow
class TestFullRangeSweeps:
    """Test the r-fold closed forms over the full verification ranges."""

    @pytest.mark.parametrize("r", range(0, 6))
    @pytest.mark.parametrize("l", range(0, 9))
    def test_falling(self, r, l):
        """Test falling factorials for r <= 5, l <= 8 and n <= 15."""
        form = rfold_falling(r, l)
        assert rfold_oracle_check(form, XS, 15).passed
        assert correction_check(form).passed

    @pytest.mark.parametrize("folds", range(0, 6))
    @pytest.mark.parametrize("power", range(1, 7))
    def test_powers(self, folds, power):
        """Test every matching-parity closed form for folds <= 5, power <= 6 and n <= 12."""
        form = rfold_closed_form(folds, power)
        if form is None:
            assert (folds + power) % 2 == 1
            return
        assert rfold_oracle_check(form, XS, 12).passed
        assert correction_check(form).passed

    @pytest.mark.parametrize("kind", ["odd", "even"])
    @pytest.mark.parametrize("r", range(0, 4))
    @pytest.mark.parametrize("k", range(1, 6))
    def test_polynomiality(self, kind, r, k):
        """Test the rewrite in nu leaves no remainder for r <= 3 and k <= 5."""
        assert polynomiality_check(kind, r, k).passed
