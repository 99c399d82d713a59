"""
Bernoulli, Euler and central factorial tables.

Bernoulli convention: B_1 = -1/2, i.e. the coefficients of t*e^(xt)/(e^t - 1).
The other common convention (B_1 = +1/2) changes only B_1, but every
formula here that touches B_1 (the Gessel-Viennot sum at m = 1, the
polynomial expansion of B_n(x)) depends on the sign.

Euler polynomials come from their own recurrence, not from Bernoulli
identities, so cross-family checks compare two independent derivations.

Tables grow on demand, append-only, under a lock.
"""
import contextlib
import functools
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .checks import CheckResult, compare, failed, passed
from .exact_algebra import Polynomial, falling_factorial
from .exceptions import IdentityViolationError

logger = logging.getLogger(__name__)

X = Polynomial.generator("x")
HALF = Fraction(1, 2)

_TABLE_CACHES: List[Callable] = []


def table_cache(func: Callable) -> Callable:
    """Memoize ``func`` and register it to be cleared when the Bernoulli table is swapped."""
    cached = functools.lru_cache(maxsize=None)(func)
    _TABLE_CACHES.append(cached)
    return cached


def clear_table_caches() -> None:
    for cached in _TABLE_CACHES:
        cached.cache_clear()


class BernoulliTable:
    """
    B_0..B_max from the recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0.

    ``flipped`` names one index whose sign is reported negated; it exists
    only for the verify harness's negative self-test.
    """

    def __init__(self, flipped: Optional[int] = None):
        self._numbers: List[Fraction] = [Fraction(1)]
        self._polys: List[Polynomial] = []
        self._lock = threading.RLock()
        self.flipped = flipped

    @property
    def max_index(self) -> int:
        return len(self._numbers) - 1

    @property
    def numbers(self) -> Tuple[Fraction, ...]:
        return tuple(self.number(i) for i in range(len(self._numbers)))

    @property
    def polys(self) -> Tuple[Polynomial, ...]:
        return tuple(self._polys)

    def extend(self, max_index: int) -> "BernoulliTable":
        with self._lock:
            start = len(self._numbers)
            for n in range(start, max_index + 1):
                total = sum(comb(n + 1, k) * self._numbers[k] for k in range(n))
                self._numbers.append(-total / (n + 1))
            if max_index >= start:
                logger.debug(f"Bernoulli table grown to B_{max_index}")
        return self

    def number(self, index: int) -> Fraction:
        if index > self.max_index:
            self.extend(index)
        value = self._numbers[index]
        return -value if index == self.flipped else value

    def poly(self, n: int) -> Polynomial:
        with self._lock:
            while len(self._polys) <= n:
                k = len(self._polys)
                # B_k(x) = sum_i C(k, i) B_i x^(k-i)
                coeffs = [comb(k, k - j) * self.number(k - j) for j in range(k + 1)]
                self._polys.append(Polynomial("x", coeffs))
        return self._polys[n]


_bernoulli = BernoulliTable()


@contextlib.contextmanager
def bernoulli_fault(index: int = 2) -> Iterator[BernoulliTable]:
    """
    Temporarily flip the sign of B_index everywhere.

    Every cache registered through ``table_cache`` is cleared on entry and
    on exit so no corrupted value outlives the block.
    """
    global _bernoulli
    original = _bernoulli
    _bernoulli = BernoulliTable(flipped=index)
    clear_table_caches()
    logger.warning(f"Bernoulli fault injected: sign of B_{index} flipped")
    try:
        yield _bernoulli
    finally:
        _bernoulli = original
        clear_table_caches()


def bernoulli_numbers(max_index: int) -> BernoulliTable:
    """
    Bernoulli numbers B_0..B_max_index.

    Examples:
        >>> bernoulli_numbers(12).number(12)
        Fraction(-691, 2730)
    """
    return _bernoulli.extend(max_index)


def bernoulli_number(n: int) -> Fraction:
    return _bernoulli.number(n)


def bernoulli_poly(n: int) -> Polynomial:
    """B_n(x) = sum_i C(n, i) B_i x^(n-i)."""
    return _bernoulli.poly(n)


class EulerTable:
    """E_0(x)..E_max(x) and the Euler numbers E_n = 2^n E_n(1/2)."""

    def __init__(self):
        self._polys: List[Polynomial] = []
        self._lock = threading.RLock()

    @property
    def max_index(self) -> int:
        return len(self._polys) - 1

    @property
    def polys(self) -> Tuple[Polynomial, ...]:
        return tuple(self._polys)

    @property
    def numbers(self) -> Tuple[Fraction, ...]:
        return tuple(self.number(n) for n in range(len(self._polys)))

    def extend(self, max_index: int) -> "EulerTable":
        with self._lock:
            for n in range(len(self._polys), max_index + 1):
                # E_n(x+1) + E_n(x) = 2 x^n
                tail = Polynomial("x")
                for k in range(n):
                    tail = tail + self._polys[k] * comb(n, k)
                self._polys.append(Polynomial.monomial("x", n) - tail / 2)
        return self

    def poly(self, n: int) -> Polynomial:
        if n > self.max_index:
            self.extend(n)
        return self._polys[n]

    def number(self, n: int) -> Fraction:
        return 2 ** n * self.poly(n).specialize({"x": HALF})


_euler = EulerTable()


def euler_poly(n: int) -> Polynomial:
    """
    Euler polynomial E_n(x), coefficients of 2e^(xt)/(e^t + 1).

    Examples:
        >>> str(euler_poly(2))
        'x^2 - x'
    """
    return _euler.poly(n)


def euler_numbers(max_index: int) -> EulerTable:
    return _euler.extend(max_index)


def euler_number(n: int) -> Fraction:
    return _euler.number(n)


@functools.lru_cache(maxsize=None)
def euler_value(n: int, point: Fraction) -> Fraction:
    """E_n(point), memoized; the alternating sums evaluate a few points very often."""
    return euler_poly(n).specialize({"x": point})


@functools.lru_cache(maxsize=None)
def central_factorial_poly(k: int) -> Polynomial:
    """
    Central factorial x^[k] = x (x + k/2 - 1)_(k-1).

    Examples:
        >>> str(central_factorial_poly(4))
        'x^4 - x^2'
    """
    if k < 1:
        raise ValueError(f"Central factorial index must be positive, got {k}")
    return X * falling_factorial(X + Fraction(k, 2) - 1, k - 1)


@dataclass(frozen=True)
class CentralFactorialTable:
    """Triangular T(m, k), 1 <= k <= m <= max_m; ``entries[m][k]``, with entries[m][0] = 0."""
    max_m: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __call__(self, m: int, k: int) -> Fraction:
        return self.entries[m][k]


@functools.lru_cache(maxsize=None)
def central_factorial_numbers(m: int) -> Tuple[Fraction, ...]:
    """
    Row T(m, 0..m) of the central factorial numbers (T(m, 0) = 0 for m >= 1).

    Solved by back-substitution from k = m downward: x^[k] is monic of
    degree k, so the change of basis is unit triangular.

    Examples:
        >>> central_factorial_numbers(6)[4]
        Fraction(5, 1)
    """
    if m < 1:
        raise ValueError(f"Central factorial row must be positive, got {m}")
    residual = Polynomial.monomial("x", m)
    row = [Fraction(0)] * (m + 1)
    for k in range(m, 0, -1):
        coefficient = residual[k]
        row[k] = coefficient
        if coefficient != 0:
            residual = residual - central_factorial_poly(k) * coefficient
    if not residual.is_zero():
        raise IdentityViolationError(f"x^{m} left residual {residual} in the central factorial basis")
    return tuple(row)


def central_factorial_table(max_m: int) -> CentralFactorialTable:
    rows = ((Fraction(0),),) + tuple(central_factorial_numbers(m) for m in range(1, max_m + 1))
    return CentralFactorialTable(max_m=max_m, entries=rows)


def central_factorial_number(m: int, k: int) -> Fraction:
    if k < 1 or k > m:
        return Fraction(0)
    return central_factorial_numbers(m)[k]


# Identity checks


def bernoulli_difference_check(n: int) -> CheckResult:
    """B_n(x+1) - B_n(x) = n x^(n-1)."""
    b = bernoulli_poly(n)
    expected = Polynomial.monomial("x", n - 1, n) if n >= 1 else Polynomial("x")
    return compare("bernoulli_difference", expected, b.compose(X + 1) - b, n=n)


def bernoulli_reflection_check(n: int) -> CheckResult:
    """B_n(1-x) = (-1)^n B_n(x)."""
    b = bernoulli_poly(n)
    return compare("bernoulli_reflection", b * (-1) ** n, b.compose(1 - X), n=n)


def bernoulli_derivative_check(n: int) -> CheckResult:
    expected = bernoulli_poly(n - 1) * n if n >= 1 else Polynomial("x")
    return compare("bernoulli_derivative", expected, bernoulli_poly(n).derivative(), n=n)


def bernoulli_addition_check(n: int) -> CheckResult:
    """B_n(x+y) = sum_i C(n, i) B_i(x) y^(n-i), as a polynomial in y over x."""
    shifted = bernoulli_poly(n).compose(Polynomial("y", [X, 1]))
    expansion = Polynomial("y", [comb(n, n - j) * bernoulli_poly(n - j) for j in range(n + 1)])
    return compare("bernoulli_addition", expansion, shifted, n=n)


def bernoulli_half_check(n: int) -> CheckResult:
    """B_(2n+1)(1/2) = 0 and B_(2n)(1/2) = (2^(1-2n) - 1) B_(2n)."""
    odd = bernoulli_poly(2 * n + 1).specialize({"x": HALF})
    if odd != 0:
        return failed("bernoulli_half", {"index": 2 * n + 1, "value": odd}, n=n)
    even = bernoulli_poly(2 * n).specialize({"x": HALF})
    expected = (Fraction(2) ** (1 - 2 * n) - 1) * bernoulli_number(2 * n)
    return compare("bernoulli_half", expected, even, n=n)


def euler_addition_check(n: int) -> CheckResult:
    """E_n(x+y) = sum_k C(n, k) E_k(x) y^(n-k)."""
    shifted = euler_poly(n).compose(Polynomial("y", [X, 1]))
    expansion = Polynomial("y", [comb(n, n - j) * euler_poly(n - j) for j in range(n + 1)])
    return compare("euler_addition", expansion, shifted, n=n)


def euler_number_check(n: int) -> CheckResult:
    """E_(2n+1) = 0, and E_n(1) = 0 for positive even n."""
    if n % 2 == 1 and euler_number(n) != 0:
        return failed("euler_numbers", {"E_n": euler_number(n)}, n=n)
    if n > 0 and n % 2 == 0 and euler_value(n, Fraction(1)) != 0:
        return failed("euler_numbers", {"E_n(1)": euler_value(n, Fraction(1))}, n=n)
    return passed("euler_numbers", n=n)


def central_factorial_check(m: int) -> CheckResult:
    """x^m = sum_k T(m, k) x^[k], with T(m, m) = 1 and T(m, k) = 0 for odd m-k."""
    row = central_factorial_numbers(m)
    if row[m] != 1:
        return failed("central_factorial", {"T(m,m)": row[m]}, m=m)
    for k in range(1, m + 1):
        if (m - k) % 2 == 1 and row[k] != 0:
            return failed("central_factorial", {"k": k, "T(m,k)": row[k]}, m=m)
    rebuilt = Polynomial("x")
    for k in range(1, m + 1):
        rebuilt = rebuilt + central_factorial_poly(k) * row[k]
    return compare("central_factorial", Polynomial.monomial("x", m), rebuilt, m=m)


def odd_power_factorial_check(m: int) -> CheckResult:
    """x^(2m-1) = sum_k T(2m, 2k) (x+k-1)_(2k-1)."""
    rebuilt = Polynomial("x")
    for k in range(1, m + 1):
        rebuilt = rebuilt + falling_factorial(X + (k - 1), 2 * k - 1) * central_factorial_number(2 * m, 2 * k)
    return compare("odd_power_factorial", Polynomial.monomial("x", 2 * m - 1), rebuilt, m=m)


def sequence_table(kind: str, max_index: int) -> Dict[str, list]:
    """Plain table for the ``seq`` command: numbers and polynomials (or rows)."""
    if kind == "bernoulli":
        table = bernoulli_numbers(max_index)
        return {
            "numbers": [table.number(n) for n in range(max_index + 1)],
            "polys": [bernoulli_poly(n) for n in range(max_index + 1)],
        }
    if kind == "euler":
        euler_numbers(max_index)
        return {
            "numbers": [euler_number(n) for n in range(max_index + 1)],
            "polys": [euler_poly(n) for n in range(max_index + 1)],
        }
    if kind == "central":
        table = central_factorial_table(max_index)
        return {"rows": [list(table.entries[m][1:]) for m in range(1, max_index + 1)]}
    raise ValueError(f"Unknown sequence kind: {kind!r}")
