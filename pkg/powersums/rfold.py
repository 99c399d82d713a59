"""
r-fold power sums over the progression x+1, ..., x+n.

    sum^0 f(n) = f(n),   sum^r f(n) = sum_{i=1}^{n} sum^(r-1) f(i)

Closed forms exist for falling factorials at any r, for odd powers under
an odd number of folds and for even powers under an even number; the
mixed-parity cases are reached by exact interpolation in n.

Closed forms are polynomials in n whose coefficients are polynomials in x.
Binomials with an upper index depending on n are kept as polynomials in n,
so the forms hold for every n >= 1.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Callable, List, Optional, Sequence

from .checks import CheckResult, failed, passed
from .exact_algebra import (
    BasisConversionError,
    Polynomial,
    binomial_poly,
    falling_factorial,
    poly_in_basis,
    poly_interpolate,
    to_rational,
)
from .exceptions import IdentityViolationError, StructureViolationError
from .special_sequences import X, central_factorial_number
from .variants import resolve_variant

logger = logging.getLogger(__name__)

FALLING_FACTORIAL = "falling_factorial"
ODD_POWER = "odd_power"
EVEN_POWER = "even_power"

DENOMINATOR_PRINTED = "printed"
DENOMINATOR_SHIFTED = "shifted"

N = Polynomial.generator("n")


def _n_plus(shift: Any) -> Polynomial:
    """n + x + shift as a polynomial in n over x."""
    return Polynomial("n", [X + shift, 1])


def _lift(c: Any) -> Polynomial:
    return Polynomial("n", [c])


@dataclass(frozen=True)
class RFoldClosedForm:
    """
    A closed form for sum^r of (x+n)^m or (x+n)_l.

    ``value`` includes ``correction``, the part that vanishes at x = 0.
    """
    r: int
    m_or_l: int
    kind: str
    value: Polynomial
    correction: Polynomial

    def evaluate(self, x: Any, n: int) -> Fraction:
        return self.value.specialize({"x": to_rational(x), "n": n})

    def at_zero(self) -> Polynomial:
        """The closed form at x = 0, a polynomial in n."""
        return self.value.specialize({"x": 0})

    def summand(self, x: Any) -> Callable[[int], Fraction]:
        x = to_rational(x)
        if self.kind == FALLING_FACTORIAL:
            return lambda i: falling_factorial(x + i, self.m_or_l)
        return lambda i: (x + i) ** self.m_or_l

    @property
    def power(self) -> int:
        return self.m_or_l


# Oracles


def rfold_bruteforce_values(r: int, f: Callable[[int], Any], n: int) -> List[Fraction]:
    """[sum^r f(1), ..., sum^r f(n)] by repeated prefix sums."""
    if r < 0:
        raise ValueError(f"Fold count must be nonnegative, got {r}")
    values = [to_rational(f(i)) for i in range(1, n + 1)]
    for _ in range(r):
        values = list(itertools.accumulate(values))
    return values


def rfold_bruteforce(r: int, f: Callable[[int], Any], n: int) -> Fraction:
    """
    sum^r f at n from the recursive definition.

    Examples:
        >>> rfold_bruteforce(2, lambda i: i, 3)
        Fraction(10, 1)
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return rfold_bruteforce_values(r, f, n)[-1]


def telescoping_check(l: int, n: int) -> bool:
    """sum_{i=1}^{n} C(l+i-1, l) = C(l+n, l+1)."""
    return sum(comb(l + i - 1, l) for i in range(1, n + 1)) == comb(l + n, l + 1)


# Closed forms


@lru_cache(maxsize=None)
def rfold_falling(r: int, l: int) -> RFoldClosedForm:
    """
    sum^r (x+n)_l = (x+n+r)_{l+r} / (l+r)_r - sum_{i=1}^{r} C(n+r-i-1, r-i) (x+i)_{l+i} / (l+i)_i.

    Examples:
        >>> rfold_falling(1, 1).evaluate(0, 100)
        Fraction(5050, 1)

    r = 0 is the identity fold, with an empty correction.
    """
    if r < 0 or l < 0:
        raise ValueError(f"Need r >= 0 and l >= 0, got r={r}, l={l}")
    main = falling_factorial(_n_plus(r), l + r) / falling_factorial(Fraction(l + r), r)
    correction = Polynomial("n")
    for i in range(1, r + 1):
        tail = falling_factorial(X + i, l + i) / falling_factorial(Fraction(l + i), i)
        correction = correction + binomial_poly(N + (r - i - 1), r - i) * _lift(tail)
    return RFoldClosedForm(r=r, m_or_l=l, kind=FALLING_FACTORIAL, value=main - correction, correction=-correction)


@lru_cache(maxsize=None)
def rfold_odd(r: int, m: int) -> RFoldClosedForm:
    """
    sum^(2r+1) (x+n)^(2m-1) through central factorial numbers:

        sum_k T(2m,2k) { (x+n+k+2r)_{2k+2r} / (2k+2r)_{2r+1}
            - sum_{i=1}^{2r+1} C(n+2r-i, 2r-i+1) (x+k+i-1)_{2k+i-1} / (2k+i-1)_i }

    The result's ``r`` is the fold count 2r+1.
    """
    if r < 0 or m < 1:
        raise ValueError(f"Need r >= 0 and m >= 1, got r={r}, m={m}")
    main = Polynomial("n")
    correction = Polynomial("n")
    for k in range(1, m + 1):
        t = central_factorial_number(2 * m, 2 * k)
        if t == 0:
            continue
        main = main + falling_factorial(_n_plus(k + 2 * r), 2 * k + 2 * r) * (
            t / falling_factorial(Fraction(2 * k + 2 * r), 2 * r + 1)
        )
        for i in range(1, 2 * r + 2):
            tail = falling_factorial(X + (k + i - 1), 2 * k + i - 1) / falling_factorial(Fraction(2 * k + i - 1), i)
            correction = correction + binomial_poly(N + (2 * r - i), 2 * r - i + 1) * _lift(tail * t)
    return RFoldClosedForm(
        r=2 * r + 1, m_or_l=2 * m - 1, kind=ODD_POWER, value=main - correction, correction=-correction
    )


def half_split_check(k: int) -> bool:
    """(x+n)(x+n+k-1)_{2k-1} = 1/2 (x+n+k)_{2k} + 1/2 (x+n+k-1)_{2k}, in n over x."""
    lhs = _n_plus(0) * falling_factorial(_n_plus(k - 1), 2 * k - 1)
    rhs = (falling_factorial(_n_plus(k), 2 * k) + falling_factorial(_n_plus(k - 1), 2 * k)) / 2
    return lhs == rhs


def _even_denominator(k: int, i: int, variant: str) -> Fraction:
    if variant == DENOMINATOR_PRINTED:
        return falling_factorial(Fraction(2 * k + i), i)
    if variant == DENOMINATOR_SHIFTED:
        return falling_factorial(Fraction(2 * k + i - 1), i)
    raise ValueError(f"Unknown denominator reading: {variant!r}")


def _build_even(r: int, m: int, variant: str) -> RFoldClosedForm:
    main = Polynomial("n")
    correction = Polynomial("n")
    for k in range(1, m + 1):
        if not half_split_check(k):
            raise IdentityViolationError(f"Half-split identity failed at k={k}")
        t = central_factorial_number(2 * m, 2 * k)
        if t == 0:
            continue
        main = main + _n_plus(r) * falling_factorial(_n_plus(k + 2 * r - 1), 2 * k + 2 * r - 1) * (
            t / falling_factorial(Fraction(2 * k + 2 * r), 2 * r)
        )
        for i in range(1, 2 * r + 1):
            tail = (2 * X + i) * falling_factorial(X + (k + i - 1), 2 * k + i - 1)
            tail = tail * (t / (2 * _even_denominator(k, i, variant)))
            correction = correction + binomial_poly(N + (2 * r - i - 1), 2 * r - i) * _lift(tail)
    return RFoldClosedForm(r=2 * r, m_or_l=2 * m, kind=EVEN_POWER, value=main - correction, correction=-correction)


def _even_oracle(variant: str) -> bool:
    x = Fraction(1, 3)
    for r in (1, 2):
        for m in (1, 2):
            form = _build_even(r, m, variant)
            brute = rfold_bruteforce_values(2 * r, lambda i: (x + i) ** (2 * m), 5)
            if any(form.evaluate(x, n) != brute[n - 1] for n in range(1, 6)):
                return False
    return True


def resolve_even_denominator() -> str:
    return resolve_variant(
        "rfold-even-denominator",
        {name: (lambda name=name: _even_oracle(name)) for name in (DENOMINATOR_PRINTED, DENOMINATOR_SHIFTED)},
    )


@lru_cache(maxsize=None)
def rfold_even(r: int, m: int, variant: Optional[str] = None) -> RFoldClosedForm:
    """
    sum^(2r) (x+n)^(2m) through central factorial numbers:

        sum_k T(2m,2k) { (x+n+r)(x+n+k+2r-1)_{2k+2r-1} / (2k+2r)_{2r}
            - sum_{i=1}^{2r} C(n+2r-i-1, 2r-i) (2x+i)(x+k+i-1)_{2k+i-1} / (2 D_i) }

    D_i is resolved by oracle unless ``variant`` names it. r = 0 is the
    identity fold.
    """
    if r < 0 or m < 1:
        raise ValueError(f"Need r >= 0 and m >= 1, got r={r}, m={m}")
    if r == 0:
        # empty correction sum, no denominator to choose
        return _build_even(0, m, DENOMINATOR_PRINTED)
    return _build_even(r, m, variant or resolve_even_denominator())


def correction_vanishes_at_zero(form: RFoldClosedForm) -> bool:
    """The correction part of a closed form is divisible by x."""
    return form.correction.specialize({"x": 0}) == 0


def rfold_closed_form(folds: int, power: int) -> Optional[RFoldClosedForm]:
    """The closed form for sum^folds (x+n)^power when the parities match, else None."""
    if power < 1 or folds < 0:
        return None
    if folds % 2 == 1 and power % 2 == 1:
        return rfold_odd((folds - 1) // 2, (power + 1) // 2)
    if folds % 2 == 0 and power % 2 == 0:
        return rfold_even(folds // 2, power // 2)
    return None


def rfold_fit(r: int, m: int, x: Any) -> Polynomial:
    """
    sum^r (x+n)^m at a fixed x, recovered by exact interpolation in n.

    Raises:
        StructureViolationError: the interpolant exceeds degree m + r
    """
    x = to_rational(x)
    degree = m + r
    samples = degree + 3
    values = rfold_bruteforce_values(r, lambda i: (x + i) ** m, samples)
    poly = poly_interpolate([(n, values[n - 1]) for n in range(1, samples + 1)], variable="n")
    if poly.degree() > degree:
        raise StructureViolationError(f"r-fold sum r={r}, m={m} has degree {poly.degree()} > {degree}")
    return poly


# Polynomiality


@dataclass(frozen=True)
class PolynomialityReport:
    """A verified product identity and the x = 0 rewrite it implies."""
    kind: str
    r: int
    k: int
    product: Polynomial
    nu: Polynomial
    rewritten: Polynomial


def _odd_product(r: int, k: int):
    lhs = falling_factorial(N + (k + 2 * r), 2 * k + 2 * r)
    nu = N * (N + (2 * r + 1))
    rhs = _lift(Fraction(1))
    for i in range(1, k + r + 1):
        rhs = rhs * (nu - (k + 2 * r - i + 1) * (k - i))
    return lhs, rhs, nu


def _even_product(r: int, k: int):
    lhs = (N + r) * falling_factorial(N + (k + 2 * r - 1), 2 * k + 2 * r - 1)
    nu = N * (N + 2 * r)
    rhs = _lift(Fraction(1))
    for i in range(1, k + r + 1):
        rhs = rhs * (nu + (k + 2 * r - i) * (i - k))
    return lhs, rhs, nu


def polynomiality_rewrite(kind: str, r: int, k: int) -> PolynomialityReport:
    """
    Verify the product identity behind polynomiality in nu, then rewrite the
    x = 0 closed form for power 2k-1 (odd) or 2k (even) in the nu basis.

    odd:  (n+k+2r)_{2k+2r} = prod_{i=1}^{k+r} [n(n+2r+1) - (k+2r-i+1)(k-i)]
    even: (n+r)(n+k+2r-1)_{2k+2r-1} = prod_{i=1}^{k+r} [n(n+2r) + (k+2r-i)(i-k)]

    Raises:
        IdentityViolationError: the product identity fails or the rewrite leaves a remainder
    """
    if kind == "odd":
        lhs, rhs, nu = _odd_product(r, k)
        form = rfold_odd(r, k)
    elif kind == "even":
        lhs, rhs, nu = _even_product(r, k)
        form = rfold_even(r, k)
    else:
        raise ValueError(f"Unknown kind: {kind!r}")

    if lhs != rhs:
        raise IdentityViolationError(f"{kind} product identity fails at r={r}, k={k}")
    try:
        rewritten = poly_in_basis(form.at_zero(), nu, "nu")
    except BasisConversionError as e:
        raise IdentityViolationError(f"{kind} r-fold sum at r={r}, k={k} is not a polynomial in {nu}: {e}") from e
    logger.debug(f"Polynomiality rewrite {kind} r={r} k={k}: degree {rewritten.degree()} in nu")
    return PolynomialityReport(kind=kind, r=r, k=k, product=lhs, nu=nu, rewritten=rewritten)


# Checks


def rfold_oracle_check(form: RFoldClosedForm, xs: Sequence[Fraction], max_n: int) -> CheckResult:
    name = f"rfold_{form.kind}"
    params = {"folds": form.r, "m_or_l": form.m_or_l}
    for x in xs:
        in_n = form.value.specialize({"x": x})
        brute = rfold_bruteforce_values(form.r, form.summand(x), max_n)
        for n in range(1, max_n + 1):
            closed = in_n.specialize({"n": n}) if isinstance(in_n, Polynomial) else in_n
            if closed != brute[n - 1]:
                return failed(name, {"x": x, "n": n, "expected": brute[n - 1], "actual": closed}, **params)
    return passed(name, max_n=max_n, **params)


def telescoping_suite(max_l: int, max_n: int) -> CheckResult:
    for l in range(max_l + 1):
        for n in range(1, max_n + 1):
            if not telescoping_check(l, n):
                return failed("telescoping", {"l": l, "n": n})
    return passed("telescoping", max_l=max_l, max_n=max_n)


def half_split_suite(max_k: int) -> CheckResult:
    for k in range(1, max_k + 1):
        if not half_split_check(k):
            return failed("half_split", {"k": k})
    return passed("half_split", max_k=max_k)


def correction_check(form: RFoldClosedForm) -> CheckResult:
    params = {"kind": form.kind, "folds": form.r, "m_or_l": form.m_or_l}
    if correction_vanishes_at_zero(form):
        return passed("correction_at_zero", **params)
    return failed("correction_at_zero", {"correction_at_zero": form.correction.specialize({"x": 0})}, **params)


def polynomiality_check(kind: str, r: int, k: int) -> CheckResult:
    try:
        report = polynomiality_rewrite(kind, r, k)
    except IdentityViolationError as e:
        return failed("polynomiality", {"error": str(e)}, kind=kind, r=r, k=k)
    return passed("polynomiality", kind=kind, r=r, k=k, nu_degree=report.rewritten.degree())
