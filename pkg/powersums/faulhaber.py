"""
Faulhaber lambda-expansions for sums over the progression x+1, ..., x+n.

With lambda = n(n+2x+1):
    sum_{i=1}^{n} (x+i)^(2m-1)         = sum_{k=1}^{m} F_k(x) lambda^k
    sum_{i=1}^{n} (-1)^(n-i) (x+i)^(2m) = sum_{k=0}^{m} G_k(x) lambda^k
where G_0 depends on the parity of n. Both come from expanding a Bernoulli
(resp. Euler) polynomial around x+n+1/2, since (x+n+1/2)^2 = lambda + (x+1/2)^2.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Optional, Sequence, Tuple

from .checks import CheckResult, compare, failed, passed
from .exact_algebra import Coefficient, Polynomial, poly_eval, to_rational
from .exceptions import IdentityViolationError, PowerSumsError
from .special_sequences import (
    HALF,
    X,
    bernoulli_number,
    bernoulli_poly,
    euler_poly,
    euler_value,
    table_cache,
)
from .variants import resolve_variant

logger = logging.getLogger(__name__)

ODD_POWER_SUM = "odd_power_sum"
ALTERNATING_EVEN_SUM = "alternating_even_sum"

EXPONENT_DOUBLED = "doubled"
EXPONENT_AS_PRINTED = "as_printed"
EXPONENT_ORACLE_MAX_M = 8


class DegenerateProgressionError(PowerSumsError):
    """A progression with common difference zero."""
    pass


def lambda_poly() -> Polynomial:
    """lambda = n(n+2x+1) as a polynomial in n over x."""
    return Polynomial("n", [0, 2 * X + 1, 1])


def _lift(c: Coefficient, variable: str) -> Polynomial:
    return Polynomial(variable, [c])


def _canonical(c: Coefficient) -> Coefficient:
    if isinstance(c, Polynomial) and c.degree() <= 0:
        return c.constant_term()
    return c


# Oracles


def power_sum_bruteforce(power: int, x: Any, n: int) -> Fraction:
    """
    sum_{i=1}^{n} (x+i)^power by direct summation.

    Examples:
        >>> power_sum_bruteforce(3, 0, 2)
        Fraction(9, 1)
    """
    x = to_rational(x)
    return sum(((x + i) ** power for i in range(1, n + 1)), Fraction(0))


def alternating_power_sum_bruteforce(power: int, x: Any, n: int) -> Fraction:
    """sum_{i=1}^{n} (-1)^(n-i) (x+i)^power by direct summation."""
    x = to_rational(x)
    return sum(((-1) ** (n - i) * (x + i) ** power for i in range(1, n + 1)), Fraction(0))


@table_cache
def direct_power_sum_poly(m: int) -> Polynomial:
    """
    sum_{i=1}^{n} (x+i)^m = (B_{m+1}(x+n+1) - B_{m+1}(x+1)) / (m+1), as a polynomial in n over x.

    Examples:
        >>> poly_eval(direct_power_sum_poly(1), {"x": 0, "n": 100})
        Fraction(5050, 1)
    """
    if m < 1:
        raise ValueError(f"Power must be positive, got {m}")
    b = bernoulli_poly(m + 1)
    upper = b.compose(Polynomial("n", [X + 1, 1]))
    lower = b.compose(X + 1)
    return (upper - _lift(lower, "n")) / (m + 1)


@table_cache
def integer_power_sum_poly(m: int) -> Polynomial:
    """sum_{i=1}^{n} i^m as a polynomial in n with rational coefficients."""
    if m < 0:
        raise ValueError(f"Power must be nonnegative, got {m}")
    b = bernoulli_poly(m + 1)
    return (b.compose(Polynomial("n", [1, 1])) - b.specialize({"x": 1})) / (m + 1)


# Expansions


@dataclass(frozen=True)
class LambdaExpansion:
    """
    sum_k coeffs[k] * lambda^k with lambda = n(n+2x+1).

    ``coeffs`` is indexed by k = 0..m; coeffs[0] is always zero and the
    alternating kind keeps its parity-dependent constant term in
    ``constant_even`` / ``constant_odd``.
    """
    m: int
    kind: str
    coeffs: Tuple[Coefficient, ...]
    constant_even: Coefficient = Fraction(0)
    constant_odd: Coefficient = Fraction(0)

    @property
    def lambda_def(self) -> Polynomial:
        return lambda_poly()

    @property
    def power(self) -> int:
        return 2 * self.m - 1 if self.kind == ODD_POWER_SUM else 2 * self.m

    def constant(self, parity: Optional[str] = None) -> Coefficient:
        if self.kind == ODD_POWER_SUM:
            return Fraction(0)
        if parity not in ("even", "odd"):
            raise ValueError(f"Alternating expansions need parity 'even' or 'odd', got {parity!r}")
        return self.constant_even if parity == "even" else self.constant_odd

    def as_lambda_polynomial(self, parity: Optional[str] = None) -> Polynomial:
        return Polynomial("lambda", (self.constant(parity),) + tuple(self.coeffs[1:]))

    def expand(self, parity: Optional[str] = None) -> Polynomial:
        """Substitute lambda = n(n+2x+1); the result is a polynomial in n over x."""
        return self.as_lambda_polynomial(parity).compose(lambda_poly())

    def evaluate(self, x: Any, n: int) -> Fraction:
        x = to_rational(x)
        parity = "even" if n % 2 == 0 else "odd"
        lam = n * (n + 2 * x + 1)
        value = poly_eval(self.as_lambda_polynomial(parity), {"lambda": lam, "x": x})
        return value

    def formal_coefficient(self, k: int) -> Coefficient:
        """
        Coefficient of lambda^k as it appears in the generating function.

        For the alternating kind at k = 0 this is the average of the two
        parity constants, (1/2) E_{2m}(x+1).
        """
        if k > self.m:
            return Fraction(0)
        if k == 0:
            if self.kind == ODD_POWER_SUM:
                return Fraction(0)
            return (self.constant_even + self.constant_odd) / 2
        return self.coeffs[k]


def _shifted_half_power(i: int, k: int) -> Polynomial:
    return (X + HALF) ** (2 * i - 2 * k)


@table_cache
def faulhaber_coeffs(m: int) -> LambdaExpansion:
    """
    F_k(x) = 1/(2m) sum_{i=k}^{m} C(2m,2i) C(i,k) (x+1/2)^(2i-2k) B_{2m-2i}(1/2), k = 1..m.

    The k = 0 term equals B_{2m}(x+1)/(2m) and cancels in the sum; that
    cancellation is asserted here once per m.

    Raises:
        IdentityViolationError: the k = 0 term does not cancel

    Examples:
        >>> str(faulhaber_coeffs(2).coeffs[1])
        '1/2*x^2 + 1/2*x'
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    b_half = [bernoulli_poly(2 * m - 2 * i).specialize({"x": HALF}) for i in range(m + 1)]

    coeffs = [Fraction(0)]
    for k in range(1, m + 1):
        total = Polynomial("x")
        for i in range(k, m + 1):
            total = total + _shifted_half_power(i, k) * (comb(2 * m, 2 * i) * comb(i, k) * b_half[i])
        coeffs.append(_canonical(total / (2 * m)))

    zeroth = Polynomial("x")
    for i in range(m + 1):
        zeroth = zeroth + _shifted_half_power(i, 0) * (comb(2 * m, 2 * i) * b_half[i])
    if zeroth != bernoulli_poly(2 * m).compose(X + 1):
        raise IdentityViolationError(f"Constant term of the m={m} lambda-expansion does not cancel")

    logger.debug(f"Faulhaber coefficients built for m={m}")
    return LambdaExpansion(m=m, kind=ODD_POWER_SUM, coeffs=tuple(coeffs))


def gessel_viennot_raw(m: int, j: int) -> Fraction:
    """
    (-1)^(m-j) sum_s C(2m, m-j-s) C(m-j+s, s) (m-j-s)/(m-j+s) B_{m+j+s}, 0 <= j < m.

    This is the classical sum at index j; it equals 2m times the
    lambda^(m-j) coefficient at x = 0.
    """
    if not 0 <= j < m:
        raise ValueError(f"Index must satisfy 0 <= j < m, got j={j}, m={m}")
    total = Fraction(0)
    for s in range(m - j + 1):
        total += (
            comb(2 * m, m - j - s)
            * comb(m - j + s, s)
            * Fraction(m - j - s, m - j + s)
            * bernoulli_number(m + j + s)
        )
    return (-1) ** (m - j) * total


@table_cache
def gessel_viennot_coeffs(m: int) -> Tuple[Fraction, ...]:
    """
    lambda^k coefficients at x = 0, k = 0..m, from the classical sums.

    Index 0 is zero, matching ``LambdaExpansion.coeffs``.

    Examples:
        >>> gessel_viennot_coeffs(2)
        (Fraction(0, 1), Fraction(0, 1), Fraction(1, 4))
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return (Fraction(0),) + tuple(gessel_viennot_raw(m, m - k) / (2 * m) for k in range(1, m + 1))


def _alternating_expansion(m: int, exponent: str) -> LambdaExpansion:
    e_half = [euler_value(2 * m - 2 * i, HALF) for i in range(m + 1)]
    coeffs = [Fraction(0)]
    for k in range(1, m + 1):
        total = Polynomial("x")
        for i in range(k, m + 1):
            power = 2 * i - 2 * k if exponent == EXPONENT_DOUBLED else i - k
            total = total + (X + HALF) ** power * (comb(2 * m, 2 * i) * comb(i, k) * e_half[i])
        coeffs.append(_canonical(total / 2))
    return LambdaExpansion(
        m=m,
        kind=ALTERNATING_EVEN_SUM,
        coeffs=tuple(coeffs),
        constant_even=Fraction(0),
        constant_odd=_canonical(euler_poly(2 * m).compose(X + 1)),
    )


def alternating_exponent_oracle(exponent: str, max_m: int = EXPONENT_ORACLE_MAX_M) -> bool:
    """Whether the expansion built with ``exponent`` matches direct alternating sums for m <= max_m."""
    for m in range(1, max_m + 1):
        expansion = _alternating_expansion(m, exponent)
        for x in (Fraction(0), Fraction(1, 3)):
            for n in range(1, 7):
                if expansion.evaluate(x, n) != alternating_power_sum_bruteforce(2 * m, x, n):
                    return False
    return True


def resolve_alternating_exponent() -> str:
    """Pick the exponent of (x+1/2) in G_k that matches direct alternating sums."""
    return resolve_variant(
        "alternating-exponent",
        {name: (lambda name=name: alternating_exponent_oracle(name)) for name in (EXPONENT_DOUBLED, EXPONENT_AS_PRINTED)},
    )


@lru_cache(maxsize=None)
def alternating_coeffs(m: int, variant: Optional[str] = None) -> LambdaExpansion:
    """
    G_k(x) = 1/2 sum_{i=k}^{m} C(2m,2i) C(i,k) E_{2m-2i}(1/2) (x+1/2)^e, k = 1..m.

    The exponent e is resolved by oracle unless ``variant`` names it. The
    constant term is 0 for even n and E_{2m}(x+1) for odd n.

    Examples:
        >>> alternating_coeffs(1).coeffs[1]
        Fraction(1, 2)
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    exponent = variant or resolve_alternating_exponent()
    if exponent not in (EXPONENT_DOUBLED, EXPONENT_AS_PRINTED):
        raise ValueError(f"Unknown exponent reading: {exponent!r}")
    return _alternating_expansion(m, exponent)


# Arithmetic progressions


@dataclass(frozen=True)
class ProgressionSpec:
    """
    The progression a+b, a+2b, ..., a+nb and its sum mu = na + n(n+1)b/2.

    Writing x = a/b gives a+ib = b(x+i) and lambda = 2 mu / b.
    """
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "b", to_rational(self.b))
        if self.b == 0:
            raise DegenerateProgressionError("Common difference b must be nonzero")

    @property
    def x(self) -> Fraction:
        return self.a / self.b

    def mu_poly(self) -> Polynomial:
        return Polynomial("n", [0, self.a + self.b / 2, self.b / 2])

    def mu(self, n: int) -> Fraction:
        return n * self.a + n * (n + 1) * self.b / 2

    def bruteforce(self, power: int, n: int) -> Fraction:
        return sum(((self.a + i * self.b) ** power for i in range(1, n + 1)), Fraction(0))


def progression_power_sum(spec: ProgressionSpec, m: int) -> Polynomial:
    """
    sum_{i=1}^{n} (a+ib)^(2m-1) as a polynomial in mu.

    Examples:
        >>> str(progression_power_sum(ProgressionSpec(Fraction(-1), Fraction(2)), 2))
        '2*mu^2 - mu'
    """
    expansion = faulhaber_coeffs(m)
    x = spec.x
    scale = spec.b ** (2 * m - 1)
    coeffs = [Fraction(0)]
    for k in range(1, m + 1):
        f_k = expansion.coeffs[k]
        value = f_k.specialize({"x": x}) if isinstance(f_k, Polynomial) else f_k
        coeffs.append(scale * value * (2 / spec.b) ** k)
    return Polynomial("mu", coeffs)


def decomposition_identity_check(x: Any, n: int, i: int) -> bool:
    """
    (n+x)(n+x+1) = lambda + x(x+1), and
    [(n+x)(n+x+1)]^i - [x(x+1)]^i = sum_{k>=1} C(i,k) lambda^k [x(x+1)]^(i-k),
    both as polynomials in n over x and at the given point.
    """
    x = to_rational(x)
    shift = X * (X + 1)
    product = Polynomial("n", [X, 1]) * Polynomial("n", [X + 1, 1])
    if product != lambda_poly() + _lift(shift, "n"):
        return False

    lhs = product ** i - _lift(shift ** i, "n")
    rhs = Polynomial("n")
    for k in range(1, i + 1):
        rhs = rhs + lambda_poly() ** k * _lift(shift ** (i - k) * comb(i, k), "n")
    if lhs != rhs:
        return False

    bindings = {"x": x, "n": n}
    lam = n * (n + 2 * x + 1)
    direct = ((n + x) * (n + x + 1)) ** i - (x * (x + 1)) ** i
    return poly_eval(rhs, bindings) == direct == sum(
        (comb(i, k) * lam ** k * (x * (x + 1)) ** (i - k) for k in range(1, i + 1)), Fraction(0)
    )


# Checks


def faulhaber_reconstruction_check(m: int) -> CheckResult:
    """Substituting lambda back reproduces sum (x+i)^(2m-1) as a polynomial in (n, x)."""
    return compare("faulhaber_reconstruction", direct_power_sum_poly(2 * m - 1), faulhaber_coeffs(m).expand(), m=m)


def faulhaber_oracle_check(m: int, xs: Sequence[Fraction], max_n: int) -> CheckResult:
    expansion = faulhaber_coeffs(m)
    for x in xs:
        for n in range(1, max_n + 1):
            closed = expansion.evaluate(x, n)
            direct = power_sum_bruteforce(2 * m - 1, x, n)
            if closed != direct:
                return failed("faulhaber_oracle", {"x": x, "n": n, "expected": direct, "actual": closed}, m=m)
    return passed("faulhaber_oracle", m=m, max_n=max_n, xs=list(xs))


def gessel_viennot_check(m: int) -> CheckResult:
    expansion = faulhaber_coeffs(m)
    at_zero = tuple(
        c.specialize({"x": 0}) if isinstance(c, Polynomial) else c for c in expansion.coeffs
    )
    return compare("gessel_viennot", at_zero, gessel_viennot_coeffs(m), m=m)


def alternating_oracle_check(m: int, xs: Sequence[Fraction], max_n: int) -> CheckResult:
    expansion = alternating_coeffs(m)
    for x in xs:
        for n in range(1, max_n + 1):
            closed = expansion.evaluate(x, n)
            direct = alternating_power_sum_bruteforce(2 * m, x, n)
            if closed != direct:
                return failed("alternating_oracle", {"x": x, "n": n, "expected": direct, "actual": closed}, m=m)
    return passed("alternating_oracle", m=m, max_n=max_n, xs=list(xs))


def progression_check(a: Any, b: Any, m: int, max_n: int) -> CheckResult:
    spec = ProgressionSpec(a, b)
    poly = progression_power_sum(spec, m)
    for n in range(1, max_n + 1):
        closed = poly_eval(poly, spec.mu(n))
        direct = spec.bruteforce(2 * m - 1, n)
        if closed != direct:
            return failed("progression", {"n": n, "expected": direct, "actual": closed}, a=spec.a, b=spec.b, m=m)
    return passed("progression", a=spec.a, b=spec.b, m=m)


def decomposition_check(x: Any, n: int, i: int) -> CheckResult:
    if decomposition_identity_check(x, n, i):
        return passed("lambda_decomposition", x=to_rational(x), n=n, i=i)
    return failed("lambda_decomposition", {"x": to_rational(x), "n": n, "i": i}, x=to_rational(x), n=n, i=i)
