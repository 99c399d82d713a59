"""
Truncated formal power series and the generating-function checks.

A ``TruncatedSeries`` knows its coefficients for exponents below ``order``
and nothing beyond. Coefficients live in any ring the package uses:
rationals, polynomials in x, or series in another variable (the
generating-function checks use a series in y whose coefficients are series
in t over polynomials in x).
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .checks import CheckResult, compare, failed, passed
from .exact_algebra import Polynomial
from .exceptions import PowerSumsError
from .special_sequences import HALF, X, euler_value

logger = logging.getLogger(__name__)


class SeriesError(PowerSumsError):
    """Base exception for truncated series errors."""
    pass


class SeriesValuationError(SeriesError):
    """The leading structure required by an operation is missing."""
    pass


class SeriesOrderError(SeriesError):
    """A coefficient beyond the known order was requested, or orders are inconsistent."""
    pass


def _is_zero(c: Any) -> bool:
    if isinstance(c, (Polynomial, TruncatedSeries)):
        return c.is_zero()
    return c == 0


class TruncatedSeries:
    """sum_{k < order} coeffs[k] * variable^k, exact below ``order``."""

    __slots__ = ("_variable", "_order", "_coeffs")

    def __init__(self, variable: str, order: int, coeffs: Sequence[Any] = ()):
        if order < 0:
            raise SeriesOrderError(f"Order must be nonnegative, got {order}")
        kept = [c if isinstance(c, (Polynomial, TruncatedSeries)) else Fraction(c) for c in list(coeffs)[:order]]
        while kept and _is_zero(kept[-1]):
            kept.pop()
        self._variable = variable
        self._order = order
        self._coeffs: Tuple[Any, ...] = tuple(kept)

    @classmethod
    def from_function(cls, variable: str, order: int, term: Callable[[int], Any]) -> "TruncatedSeries":
        return cls(variable, order, [term(k) for k in range(order)])

    @classmethod
    def one(cls, variable: str, order: int) -> "TruncatedSeries":
        return cls(variable, order, [1])

    @property
    def variable(self) -> str:
        return self._variable

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> Tuple[Any, ...]:
        return self._coeffs

    def is_zero(self) -> bool:
        return not self._coeffs

    def __getitem__(self, power: int) -> Any:
        if power < 0:
            raise IndexError("No negative exponents")
        if power >= self._order:
            raise SeriesOrderError(
                f"Coefficient of {self._variable}^{power} is beyond the known order {self._order}"
            )
        return self._coeffs[power] if power < len(self._coeffs) else Fraction(0)

    def valuation(self) -> int:
        """Smallest exponent with a nonzero coefficient; ``order`` for the zero series."""
        for k, c in enumerate(self._coeffs):
            if not _is_zero(c):
                return k
        return self._order

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self._order:
            raise SeriesOrderError(f"Cannot extend a series known to order {self._order} up to {order}")
        return TruncatedSeries(self._variable, order, self._coeffs)

    # arithmetic

    def _same(self, other: Any) -> bool:
        return isinstance(other, TruncatedSeries) and other._variable == self._variable

    def __add__(self, other: Any) -> "TruncatedSeries":
        if self._same(other):
            order = min(self._order, other._order)
            a, b = list(self._coeffs), list(other._coeffs)
            size = max(len(a), len(b))
            a += [Fraction(0)] * (size - len(a))
            b += [Fraction(0)] * (size - len(b))
            return TruncatedSeries(self._variable, order, [p + q for p, q in zip(a, b)])
        if isinstance(other, TruncatedSeries) or isinstance(other, (int, Fraction, Polynomial)):
            if self._order == 0:
                return self
            head = self[0] + other
            return TruncatedSeries(self._variable, self._order, (head,) + self._coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self._variable, self._order, [-c for c in self._coeffs])

    def __sub__(self, other: Any) -> "TruncatedSeries":
        return self + (-other)

    def __rsub__(self, other: Any) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other: Any) -> "TruncatedSeries":
        if self._same(other):
            order = min(self._order, other._order)
            out: List[Any] = [Fraction(0)] * min(order, max(len(self._coeffs) + len(other._coeffs) - 1, 0))
            for i, a in enumerate(self._coeffs[:order]):
                if _is_zero(a):
                    continue
                for j, b in enumerate(other._coeffs[: order - i]):
                    if _is_zero(b):
                        continue
                    out[i + j] = out[i + j] + a * b
            return TruncatedSeries(self._variable, order, out)
        if isinstance(other, TruncatedSeries) or isinstance(other, (int, Fraction, Polynomial)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, factor: Any) -> "TruncatedSeries":
        return TruncatedSeries(self._variable, self._order, [c * factor for c in self._coeffs])

    def __truediv__(self, divisor: Any) -> "TruncatedSeries":
        if self._same(divisor):
            return self * divisor.reciprocal()
        return self.scale(1 / Fraction(divisor))

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if not isinstance(exponent, int) or exponent < 0:
            raise SeriesError(f"Exponent must be a nonnegative integer, got {exponent!r}")
        result = TruncatedSeries.one(self._variable, self._order)
        for _ in range(exponent):
            result = result * self
        return result

    def shift_down(self, k: int = 1) -> "TruncatedSeries":
        """Divide by variable^k; the k lowest coefficients must vanish."""
        if self.valuation() < k:
            raise SeriesValuationError(
                f"Cannot divide by {self._variable}^{k}: valuation is {self.valuation()}"
            )
        return TruncatedSeries(self._variable, self._order - k, self._coeffs[k:])

    def shift_up(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by variable^k."""
        return TruncatedSeries(self._variable, self._order + k, [Fraction(0)] * k + list(self._coeffs))

    def reciprocal(self) -> "TruncatedSeries":
        """
        1/A, for A with a nonzero rational constant term.

        Raises:
            SeriesValuationError: the constant term is zero or not a rational
        """
        head = self[0] if self._order else Fraction(0)
        if isinstance(head, (Polynomial, TruncatedSeries)) or head == 0:
            raise SeriesValuationError(
                f"Reciprocal needs a unit constant term; valuation is {self.valuation()}, constant {head}"
            )
        inverse = 1 / head
        out = [inverse]
        for n in range(1, self._order):
            acc: Any = Fraction(0)
            for k in range(1, min(n, len(self._coeffs) - 1) + 1):
                acc = acc + self._coeffs[k] * out[n - k]
            out.append(-acc * inverse)
        return TruncatedSeries(self._variable, self._order, out)

    def sqrt(self) -> "TruncatedSeries":
        """
        Principal square root S with S(0) = 1, for A with constant term 1.

        Raises:
            SeriesValuationError: the constant term is not 1
        """
        head = self[0] if self._order else Fraction(0)
        if isinstance(head, (Polynomial, TruncatedSeries)) or head != 1:
            raise SeriesValuationError(f"Square root needs constant term 1, got {head}")
        out: List[Any] = [Fraction(1)]
        for n in range(1, self._order):
            acc: Any = Fraction(0)
            for k in range(1, n):
                acc = acc + out[k] * out[n - k]
            out.append((self[n] - acc) / 2)
        return TruncatedSeries(self._variable, self._order, out)

    def sqrt_with_valuation(self, sign: int = 1) -> "TruncatedSeries":
        """
        Square root of c * var^(2v) * (1 + h) as sign * sqrt(c) * var^v * sqrt(1 + h).

        The result is known to order ``order - v//2``.

        Raises:
            SeriesValuationError: odd valuation, zero series, or c not a rational square
        """
        if sign not in (1, -1):
            raise SeriesError(f"Root choice must be +1 or -1, got {sign}")
        v = self.valuation()
        if v >= self._order:
            raise SeriesValuationError("Square root of a series with no known nonzero term")
        if v % 2:
            raise SeriesValuationError(f"Square root needs an even valuation, got {v}")
        lead = self._coeffs[v]
        root = _rational_sqrt(lead)
        unit = self.shift_down(v).scale(1 / lead)
        return unit.sqrt().scale(sign * root).shift_up(v // 2)

    # comparison

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TruncatedSeries):
            if isinstance(other, (int, Fraction, Polynomial)):
                if len(self._coeffs) > 1:
                    return False
                return (self._coeffs[0] if self._coeffs else Fraction(0)) == other
            return NotImplemented
        return (
            self._variable == other._variable
            and self._order == other._order
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self._variable, self._order, self._coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self._variable!r}, {self._order}, {list(self._coeffs)!r})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self._coeffs):
            if _is_zero(c):
                continue
            monomial = "" if k == 0 else self._variable if k == 1 else f"{self._variable}^{k}"
            text = str(c)
            if isinstance(c, (Polynomial, TruncatedSeries)) and monomial:
                text = f"({text})"
            terms.append(f"{text}*{monomial}" if monomial else text)
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O({self._variable}^{self._order})".replace("+ -", "- ")


def _rational_sqrt(value: Any) -> Fraction:
    if isinstance(value, (Polynomial, TruncatedSeries)) or value <= 0:
        raise SeriesValuationError(f"Leading coefficient {value} has no positive rational square root")
    value = Fraction(value)
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        raise SeriesValuationError(f"Leading coefficient {value} is not a rational square")
    return Fraction(num, den)


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    """
    Apply ``op`` in {add, sub, mul}; the result order is the smaller input order.

    Raises:
        SeriesError: variable mismatch or unknown op
    """
    if a.variable != b.variable:
        raise SeriesError(f"Variable mismatch: {a.variable!r} vs {b.variable!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise SeriesError(f"Unknown series operation: {op!r}")


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    return a.reciprocal()


def series_sqrt(a: TruncatedSeries) -> TruncatedSeries:
    return a.sqrt()


def exp_series(variable: str, order: int, scale: Any = 1) -> TruncatedSeries:
    """e^(scale * variable)."""
    scale = Fraction(scale)
    return TruncatedSeries.from_function(variable, order, lambda k: scale ** k / math.factorial(k))


def egf(variable: str, order: int, values: Callable[[int], Any]) -> TruncatedSeries:
    """Exponential generating function sum_k values(k) var^k / k!."""
    return TruncatedSeries.from_function(variable, order, lambda k: values(k) * Fraction(1, math.factorial(k)))


def cosh_sqrt_series(u: Any, y_order: int, variable: str = "y") -> TruncatedSeries:
    """
    cosh(y * sqrt(u)) = sum_j u^j y^(2j) / (2j)!, with no square root taken.

    ``u`` is any ring element: a rational, a polynomial, or a series in t.

    Examples:
        >>> cosh_sqrt_series(Fraction(0), 4)[0]
        Fraction(1, 1)
    """
    coeffs: List[Any] = []
    power: Any = Fraction(1)
    for j in range((y_order + 1) // 2):
        if j:
            power = power * u
        coeffs.extend([power * Fraction(1, math.factorial(2 * j)), Fraction(0)])
    return TruncatedSeries(variable, y_order, coeffs)


def _t_coefficient(c: Any, k: int) -> Any:
    if isinstance(c, TruncatedSeries):
        return c[k]
    if isinstance(c, Polynomial) and c.variable == "t":
        return c[k]
    return c if k == 0 else Fraction(0)


def _check_orders(max_y_power: int, y_order: int, k_max: int, t_order: int) -> None:
    if max_y_power >= y_order:
        raise SeriesOrderError(f"y-order {y_order} too small for y^{max_y_power}")
    if k_max >= t_order:
        raise SeriesOrderError(f"t-order {t_order} too small for t^{k_max}")


def _shifted_u(t_order: int, with_t: bool = True) -> TruncatedSeries:
    base = (X + HALF) ** 2
    return TruncatedSeries("t", t_order, [base, 1] if with_t else [base])


def faulhaber_gf(y_order: int = 13, t_order: int = 7) -> TruncatedSeries:
    """
    (cosh(y sqrt((x+1/2)^2 + t)) - cosh(y(x+1/2))) / (2 sinh(y/2)).

    Pipeline: the numerator has y-valuation >= 2; divide it by y, then by
    the even unit series 2 sinh(y/2) / y = sum_j (y/2)^(2j) / (2j+1)!.
    The result is known to y-order ``y_order - 1``.
    """
    numerator = cosh_sqrt_series(_shifted_u(t_order), y_order) - cosh_sqrt_series(
        _shifted_u(t_order, with_t=False), y_order
    )
    if numerator.valuation() < 2:
        raise SeriesValuationError(f"Numerator y-valuation is {numerator.valuation()}, expected >= 2")
    reduced = numerator.shift_down(1)
    sinh_ratio = TruncatedSeries.from_function(
        "y",
        y_order - 1,
        lambda k: Fraction(1, 2 ** k * math.factorial(k + 1)) if k % 2 == 0 else Fraction(0),
    )
    return reduced * sinh_ratio.reciprocal()


def alternating_gf(y_order: int = 13, t_order: int = 7) -> TruncatedSeries:
    """cosh(y sqrt((x+1/2)^2 + t)) / (2 cosh(y/2))."""
    double_cosh = TruncatedSeries.from_function(
        "y",
        y_order,
        lambda k: Fraction(2, 2 ** k * math.factorial(k)) if k % 2 == 0 else Fraction(0),
    )
    return cosh_sqrt_series(_shifted_u(t_order), y_order) * double_cosh.reciprocal()


def gf_faulhaber_check(max_m: int, max_k: int, y_order: int = 13, t_order: int = 7) -> List[CheckResult]:
    """
    Compare (2m+1)! [t^k y^(2m+1)] of the Faulhaber generating function
    with F_k^(m+1)(x) for 0 <= m < max_m, 1 <= k <= max_k.
    """
    from .faulhaber import faulhaber_coeffs

    _check_orders(2 * max_m - 1, y_order - 1, max_k, t_order)
    gf = faulhaber_gf(y_order, t_order)
    results = []
    for m in range(max_m):
        expansion = faulhaber_coeffs(m + 1)
        for k in range(1, max_k + 1):
            extracted = _t_coefficient(gf[2 * m + 1], k) * math.factorial(2 * m + 1)
            results.append(compare("gf_faulhaber", expansion.formal_coefficient(k), extracted, m=m, k=k))
    logger.debug(f"Faulhaber generating function checked on {len(results)} coefficients")
    return results


def _alternating_expected(m: int, k: int) -> Any:
    from .faulhaber import alternating_coeffs

    if m == 0:
        return HALF if k == 0 else Fraction(0)
    return alternating_coeffs(m).formal_coefficient(k)


def gf_alternating_check(max_m: int, max_k: int, y_order: int = 13, t_order: int = 7) -> List[CheckResult]:
    """
    Compare (2m)! [t^k y^(2m)] of the alternating generating function with
    G_k^(m)(x) for 0 <= m < max_m, 0 <= k <= max_k; at k = 0 the expected
    value is the parity average (1/2) E_{2m}(x+1).
    """
    _check_orders(2 * max_m - 2, y_order, max_k, t_order)
    gf = alternating_gf(y_order, t_order)
    results = []
    for m in range(max_m):
        for k in range(max_k + 1):
            extracted = _t_coefficient(gf[2 * m], k) * math.factorial(2 * m)
            results.append(compare("gf_alternating", _alternating_expected(m, k), extracted, m=m, k=k))
    return results


def euler_egfs(order: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """A(t), B(t): exponential generating functions of E_n(1) and E_n(1/2)."""
    a = egf("t", order, lambda n: euler_value(n, Fraction(1)))
    b = egf("t", order, lambda n: euler_value(n, HALF))
    return a, b


def euler_sqrt_check(order: int = 16) -> List[CheckResult]:
    """
    A^2 = 2A - B^2, and A = 1 - sqrt(1 - B^2) on the branch with leading term -t/2.

    1 - B^2 has t-valuation 2, so B is built two terms past ``order``.
    """
    a, b = euler_egfs(order + 2)
    a_cut = a.truncate(order)
    square = compare("euler_gf_square", (2 * a - b * b).truncate(order), (a * a).truncate(order), order=order)

    root = (1 - b * b).sqrt_with_valuation(sign=-1)
    if root.order < order:
        return [square, failed("euler_gf_sqrt", {"reason": f"root known only to order {root.order}"}, order=order)]
    sqrt_check = compare("euler_gf_sqrt", a_cut, (1 - root).truncate(order), order=order, branch="negative")
    return [square, sqrt_check]


def euler_power_gf_check(k_max: int, order: int) -> List[CheckResult]:
    """
    n! [t^n] A(t)^k equals E^(k)_n(1/2, ..., 1/2, (k+1)/2) for 1 <= k <= k_max, n < order.
    """
    from .alternating import euler_convolution

    a, _ = euler_egfs(order)
    results = []
    power = TruncatedSeries.one("t", order)
    for k in range(1, k_max + 1):
        power = power * a
        args = [HALF] * (k - 1) + [Fraction(k + 1, 2)]
        mismatch: Optional[dict] = None
        for n in range(order):
            direct = euler_convolution(args, n).value
            extracted = power[n] * math.factorial(n)
            if direct != extracted:
                mismatch = {"n": n, "expected": direct, "actual": extracted}
                break
        if mismatch is None:
            results.append(passed("euler_power_gf", k=k, order=order))
        else:
            results.append(failed("euler_power_gf", mismatch, k=k, order=order))
    return results
