"""
Unit tests for exact rationals and dense polynomials.
"""
import math
import random
from fractions import Fraction

import pytest

from powersums.exact_algebra import (
    AlgebraError,
    BasisConversionError,
    InexactDivisionError,
    InterpolationError,
    Polynomial,
    UnboundVariableError,
    VariableMismatchError,
    binomial_poly,
    exact_divide,
    falling_factorial,
    poly_arith,
    poly_eval,
    poly_in_basis,
    poly_interpolate,
    to_rational,
)

X = Polynomial.generator("x")
N = Polynomial.generator("n")


def random_rational(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 6))


def random_poly(rng, variable="x", nested=False):
    coeffs = []
    for _ in range(rng.randint(0, 4)):
        if nested:
            coeffs.append(random_poly(rng))
        else:
            coeffs.append(random_rational(rng))
    return Polynomial(variable, coeffs)


class TestToRational:
    """Test coercion to exact rationals."""

    def test_parses_fraction_strings(self):
        """Test "p/q" strings parse exactly."""
        assert to_rational("-3/2") == Fraction(-3, 2)
        assert to_rational(" 7/3 ") == Fraction(7, 3)

    def test_refuses_floats(self):
        """Test floats are rejected rather than rounded."""
        with pytest.raises(AlgebraError, match="Not an exact rational"):
            to_rational(0.5)

    def test_refuses_bools_and_garbage(self):
        """Test bools and unparsable strings are rejected."""
        with pytest.raises(AlgebraError):
            to_rational(True)
        with pytest.raises(AlgebraError):
            to_rational("one half")


class TestPolynomialStructure:
    """Test canonical form and accessors."""

    def test_trailing_zeros_stripped(self):
        """Test trailing zero coefficients do not count toward the degree."""
        p = Polynomial("x", [1, 2, 0, 0])
        assert p.degree() == 1
        assert p.coeffs == (Fraction(1), Fraction(2))

    def test_zero_polynomial(self):
        """Test the zero polynomial has degree -1 and no coefficients."""
        zero = Polynomial("x")
        assert zero.degree() == -1
        assert zero.is_zero()
        assert zero.leading_coefficient() == 0

    def test_constant_nested_coefficient_demoted(self):
        """Test a constant polynomial coefficient becomes a plain rational."""
        p = Polynomial("n", [Polynomial("x", [5]), 1])
        assert p.constant_term() == Fraction(5)
        assert not isinstance(p.constant_term(), Polynomial)

    def test_reusing_outer_variable_rejected(self):
        """Test a coefficient may not mention the outer variable."""
        with pytest.raises(VariableMismatchError):
            Polynomial("x", [X, 1])

    def test_constants_compare_across_variables(self):
        """Test constant polynomials equal their value whatever the tag."""
        assert Polynomial("x", [3]) == 3
        assert Polynomial("x", [3]) == Polynomial("y", [3])


class TestPolynomialArithmetic:
    """Test ring operations."""

    def test_product_and_text(self):
        """Test (x+1)(x-1) = x^2 - 1 and its text form."""
        assert str(poly_arith(X + 1, X - 1, "mul")) == "x^2 - 1"

    def test_variable_mismatch(self):
        """Test adding polynomials in different variables fails loudly."""
        with pytest.raises(VariableMismatchError):
            X + Polynomial.generator("y")
        with pytest.raises(VariableMismatchError):
            poly_arith(X, N, "add")

    def test_unknown_operation(self):
        """Test an unknown op name raises."""
        with pytest.raises(AlgebraError, match="Unknown"):
            poly_arith(X, X, "pow")

    def test_nested_coefficients(self):
        """Test (n + x)^2 expands with x-polynomial coefficients."""
        p = Polynomial("n", [X, 1]) ** 2
        assert p[2] == 1
        assert p[1] == 2 * X
        assert p[0] == X ** 2
        assert str(Polynomial("n", [X, 1])) == "n + x"

    def test_divmod(self):
        """Test polynomial long division."""
        quotient, remainder = divmod(X ** 2 - 1, X - 1)
        assert quotient == X + 1
        assert remainder.is_zero()

    def test_exact_divide_refuses_remainder(self):
        """Test exact division insists on a zero remainder."""
        with pytest.raises(InexactDivisionError):
            exact_divide(X ** 2 + 1, X - 1)

    def test_scalar_division(self):
        """Test dividing by a rational scales the coefficients."""
        assert (2 * X + 4) / 2 == X + 2
        with pytest.raises(ZeroDivisionError):
            X / 0

    def test_negative_exponent_rejected(self):
        """Test only nonnegative integer powers are allowed."""
        with pytest.raises(AlgebraError):
            X ** -1


class TestSubstitution:
    """Test composition, specialization and evaluation."""

    def test_compose(self):
        """Test x^2 composed with x+1."""
        assert (X ** 2).compose(X + 1) == X ** 2 + 2 * X + 1

    def test_compose_into_other_variable(self):
        """Test composing an x-polynomial with a polynomial in n."""
        p = (X ** 2).compose(N + 1)
        assert p.variable == "n"
        assert p == N ** 2 + 2 * N + 1

    def test_partial_specialization(self):
        """Test binding x in (n + x) leaves a polynomial in n."""
        p = Polynomial("n", [X, 1])
        assert p.specialize({"x": 2}) == N + 2
        assert p.specialize({"x": 2, "n": 3}) == Fraction(5)

    def test_eval_reports_unbound_variables(self):
        """Test evaluation names the variables left unbound."""
        with pytest.raises(UnboundVariableError, match="x"):
            poly_eval(Polynomial("n", [X, 1]), {"n": 1})

    def test_eval_scalar_point(self):
        """Test a bare rational binds the outer variable."""
        assert poly_eval(X ** 3 - X, Fraction(1, 2)) == Fraction(-3, 8)

    def test_derivative(self):
        """Test d/dx x^3 = 3x^2."""
        assert (X ** 3).derivative() == 3 * X ** 2


class TestFactorials:
    """Test falling factorials and binomials."""

    def test_falling_factorial_values(self):
        """Test (5)_3 = 60 and (v)_0 = 1."""
        assert falling_factorial(5, 3) == 60
        assert falling_factorial(X, 0) == 1

    def test_falling_factorial_polynomial(self):
        """Test (x)_2 = x^2 - x."""
        assert str(falling_factorial(X, 2)) == "x^2 - x"

    def test_binomial_poly(self):
        """Test C(n, 2) evaluated at n = 5."""
        assert binomial_poly(N, 2).specialize({"n": 5}) == 10

    def test_negative_length_rejected(self):
        """Test negative factorial length raises."""
        with pytest.raises(AlgebraError):
            falling_factorial(X, -1)


class TestInterpolation:
    """Test exact Newton interpolation."""

    def test_recovers_square(self):
        """Test three points on v^2 give v^2."""
        p = poly_interpolate([(1, 1), (2, 4), (3, 9)])
        assert p == Polynomial("v", [0, 0, 1])

    def test_rational_abscissae(self):
        """Test interpolation through rational points."""
        points = [(Fraction(1, 2), Fraction(1, 4)), (Fraction(-1, 3), Fraction(1, 9)), (2, 4)]
        assert poly_interpolate(points, variable="x") == X ** 2

    def test_repeated_abscissa(self):
        """Test repeated abscissae are rejected."""
        with pytest.raises(InterpolationError, match="distinct"):
            poly_interpolate([(1, 1), (1, 2)])

    def test_empty(self):
        """Test interpolation needs at least one point."""
        with pytest.raises(InterpolationError):
            poly_interpolate([])


class TestBasisConversion:
    """Test rewriting in powers of a quadratic."""

    def test_rewrite_in_n_times_n_plus_one(self):
        """Test b^2 + 3b + 2 with b = n(n+1) is recovered digit by digit."""
        basis = N * (N + 1)
        p = basis ** 2 + 3 * basis + 2
        assert poly_in_basis(p, basis, "nu") == Polynomial("nu", [2, 3, 1])

    def test_not_in_basis(self):
        """Test n alone is not a polynomial in n(n+1)."""
        with pytest.raises(BasisConversionError):
            poly_in_basis(N, N * (N + 1), "nu")


class TestSerialization:
    """Test the JSON form of nested polynomials."""

    def test_dict_form(self):
        """Test numerators and denominators are decimal strings, nested coefficients recurse."""
        p = Polynomial("n", [X / 2, 1])
        data = p.to_dict()
        assert data["variable"] == "n"
        assert data["coeffs"][0] == {"variable": "x", "coeffs": [{"num": "0", "den": "1"}, {"num": "1", "den": "2"}]}
        assert Polynomial.from_dict(data) == p


class TestRingAxioms:
    """Test the ring laws on seeded random polynomials."""

    @pytest.mark.parametrize("seed", range(8))
    @pytest.mark.parametrize("nested", [False, True])
    def test_associativity(self, seed, nested):
        """Test (p + q) + s = p + (q + s) and (pq)s = p(qs)."""
        rng = random.Random(seed)
        p, q, s = (random_poly(rng, "n", nested) for _ in range(3))
        assert (p + q) + s == p + (q + s)
        assert (p * q) * s == p * (q * s)

    @pytest.mark.parametrize("seed", range(8))
    @pytest.mark.parametrize("nested", [False, True])
    def test_distributivity(self, seed, nested):
        """Test p(q + s) = pq + ps and commutativity."""
        rng = random.Random(seed)
        p, q, s = (random_poly(rng, "n", nested) for _ in range(3))
        assert p * (q + s) == p * q + p * s
        assert p * q == q * p
        assert p + q == q + p

    @pytest.mark.parametrize("seed", range(8))
    def test_identities(self, seed):
        """Test zero and one act as identities and p - p vanishes."""
        rng = random.Random(seed)
        p = random_poly(rng, "n", nested=True)
        assert p + 0 == p
        assert p * 1 == p
        assert (p * 0).is_zero()
        assert (p - p).is_zero()
        assert p + Polynomial("n") == p
        assert p * Polynomial("n", [1]) == p


class TestInterpolationProperty:
    """Test interpolants pass through their points."""

    @pytest.mark.parametrize("seed", range(10))
    def test_through_points(self, seed):
        """Test random point sets are reproduced exactly with degree below their count."""
        rng = random.Random(seed)
        size = rng.randint(1, 8)
        xs = set()
        while len(xs) < size:
            xs.add(random_rational(rng))
        points = [(x, random_rational(rng)) for x in xs]
        p = poly_interpolate(points)
        assert p.degree() < len(points)
        for x, y in points:
            assert poly_eval(p, x) == y


class TestFactorialProperties:
    """Test falling factorials and binomials as polynomials."""

    @pytest.mark.parametrize("length", range(0, 21))
    def test_falling_recurrence(self, length):
        """Test (v)_l (v - l) = (v)_{l+1}."""
        assert falling_factorial(X, length) * (X - length) == falling_factorial(X, length + 1)

    @pytest.mark.parametrize("k", range(0, 9))
    def test_binomial_matches_comb(self, k):
        """Test C(n, k) as a polynomial in n agrees with math.comb on a grid."""
        p = binomial_poly(N, k)
        for n in range(0, 16):
            assert poly_eval(p, n) == math.comb(n, k)
