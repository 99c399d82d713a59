"""
Closed-form evaluation of sum^r i^power at a single (possibly huge) n,
with an optional naive route for comparison and wall-clock timings.
"""
import itertools
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

from .exact_algebra import Polynomial, poly_eval
from .exceptions import IdentityViolationError, PowerSumsError
from .faulhaber import faulhaber_coeffs, integer_power_sum_poly
from .rfold import rfold_closed_form, rfold_fit

logger = logging.getLogger(__name__)

ROUTE_LAMBDA = "lambda_expansion"
ROUTE_BERNOULLI = "bernoulli"
ROUTE_RFOLD = "rfold_closed_form"
ROUTE_RFOLD_FIT = "rfold_fit"


class NaiveCeilingError(PowerSumsError):
    """Naive summation was requested above the configured ceiling."""
    pass


@dataclass(frozen=True)
class EvalReport:
    power: int
    r: int
    n: int
    route: str
    closed_form: int
    closed_form_ms: float
    naive: Optional[int] = None
    naive_ms: Optional[float] = None

    @property
    def agree(self) -> Optional[bool]:
        return None if self.naive is None else self.naive == self.closed_form

    def to_dict(self):
        return {
            "power": self.power,
            "r": self.r,
            "n": str(self.n),
            "route": self.route,
            "closed_form": str(self.closed_form),
            "closed_form_ms": self.closed_form_ms,
            "naive": None if self.naive is None else str(self.naive),
            "naive_ms": self.naive_ms,
            "agree": self.agree,
        }


def closed_form_evaluator(power: int, r: int = 1) -> Tuple[str, Callable[[int], Fraction]]:
    """
    Prepare the closed form for sum^r i^power and return (route, n -> value).

    Building the formula happens here, so timing the returned callable
    measures evaluation only.
    """
    if r == 1 and power % 2 == 1:
        expansion = faulhaber_coeffs((power + 1) // 2)
        return ROUTE_LAMBDA, lambda n: expansion.evaluate(0, n)
    if r == 1:
        poly = integer_power_sum_poly(power)
        return ROUTE_BERNOULLI, lambda n: poly_eval(poly, n)

    form = rfold_closed_form(r, power)
    if form is not None:
        at_zero = form.at_zero()
        if isinstance(at_zero, Polynomial):
            return ROUTE_RFOLD, lambda n: poly_eval(at_zero, n)
        return ROUTE_RFOLD, lambda n: at_zero
    poly = rfold_fit(r, power, 0)
    return ROUTE_RFOLD_FIT, lambda n: poly_eval(poly, n)


def naive_sum(power: int, r: int, n: int, ceiling: int) -> int:
    """
    sum^r i^power by repeated prefix sums over Python integers.

    Raises:
        NaiveCeilingError: n exceeds ``ceiling``

    Examples:
        >>> naive_sum(3, 1, 10, 100)
        3025
    """
    if n > ceiling:
        raise NaiveCeilingError(f"Naive summation refused: n={n} exceeds the ceiling {ceiling}")
    values = (i ** power for i in range(1, n + 1))
    for _ in range(r - 1):
        values = itertools.accumulate(values)
    return sum(values)


def _as_integer(value: Fraction) -> int:
    if value.denominator != 1:
        raise IdentityViolationError(f"Closed form produced a non-integer {value} for an integer sum")
    return value.numerator


def evaluate_sum(power: int, n: int, r: int = 1, naive: bool = False, ceiling: int = 10 ** 7) -> EvalReport:
    """
    Evaluate sum^r i^power at n by closed form and, if asked, naively.

    Raises:
        NaiveCeilingError: naive route requested above ``ceiling``
        IdentityViolationError: the two routes disagree
    """
    if n < 1 or r < 1 or power < 0:
        raise ValueError(f"Need n >= 1, r >= 1 and power >= 0, got n={n}, r={r}, power={power}")
    if naive and n > ceiling:
        raise NaiveCeilingError(f"Naive summation refused: n={n} exceeds the ceiling {ceiling}")

    route, evaluator = closed_form_evaluator(power, r)
    start = time.perf_counter()
    closed = _as_integer(evaluator(n))
    closed_ms = (time.perf_counter() - start) * 1000
    logger.debug(f"Closed form ({route}) for power={power}, r={r}, n={n} took {closed_ms:.3f} ms")

    naive_value = naive_ms = None
    if naive:
        start = time.perf_counter()
        naive_value = naive_sum(power, r, n, ceiling)
        naive_ms = (time.perf_counter() - start) * 1000
        if naive_value != closed:
            raise IdentityViolationError(
                f"Closed form {closed} differs from naive sum {naive_value} (power={power}, r={r}, n={n})"
            )
    return EvalReport(
        power=power,
        r=r,
        n=n,
        route=route,
        closed_form=closed,
        closed_form_ms=closed_ms,
        naive=naive_value,
        naive_ms=naive_ms,
    )
