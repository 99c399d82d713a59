"""
r-fold alternating power sums

    sum^r (-1)^n (n+x)^m = sum_{1 <= i_1 <= ... <= i_r <= n} (-1)^(i_1) (i_1+x)^m

their closed form through convolutions of Euler polynomials, recurrences for
the special values those convolutions take, and the exact recovery of the
(F, G) structure of the sums at x = 0.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, List, Optional, Sequence, Tuple

from .checks import CheckResult, failed, passed
from .exact_algebra import (
    BasisConversionError,
    InexactDivisionError,
    Polynomial,
    binomial_poly,
    exact_divide,
    falling_factorial,
    poly_in_basis,
    poly_interpolate,
    to_rational,
)
from .exceptions import StructureViolationError
from .rfold import rfold_bruteforce_values
from .special_sequences import HALF, euler_poly, euler_value
from .variants import resolve_variant

logger = logging.getLogger(__name__)

SIGN_MINUS = "minus"
SIGN_PLUS = "plus"

ODD_SIGN_PLAIN = "plain"
ODD_SIGN_AS_PRINTED = "as_printed"

PREFACTOR_CENTERED = "centered"
PREFACTOR_N_PLUS_R = "n_plus_r"

CASE_EVEN_FOLD_EVEN_POWER = "(2r,2m)"
CASE_ODD_FOLD_EVEN_POWER = "(2r+1,2m)"
CASE_EVEN_FOLD_ODD_POWER = "(2r,2m+1)"
CASE_ODD_FOLD_ODD_POWER = "(2r+1,2m+1)"

N = Polynomial.generator("n")


# Oracle


def alt_bruteforce_values(r: int, m: int, x: Any, n: int) -> List[Fraction]:
    """r-fold alternating sums at 1..n; the sign follows the innermost index."""
    x = to_rational(x)
    return rfold_bruteforce_values(r, lambda i: (-1) ** i * (i + x) ** m, n)


def alt_bruteforce(r: int, m: int, x: Any, n: int) -> Fraction:
    """
    sum over 1 <= i_1 <= ... <= i_r <= n of (-1)^(i_1) (i_1+x)^m.

    Examples:
        >>> alt_bruteforce(1, 2, 0, 2)
        Fraction(3, 1)
        >>> alt_bruteforce(2, 1, 0, 3)
        Fraction(-2, 1)
    """
    if r < 1 or n < 1:
        raise ValueError(f"Need r >= 1 and n >= 1, got r={r}, n={n}")
    return alt_bruteforce_values(r, m, x, n)[-1]


# Euler convolutions


@dataclass(frozen=True)
class EulerConvolution:
    """E^(r)_m(args) = sum over i_1+...+i_r = m of the multinomial times prod E_{i_j}(args[j])."""
    r: int
    m: int
    args: Tuple[Any, ...]
    value: Any


def _euler_at(index: int, point: Any) -> Any:
    if isinstance(point, Polynomial):
        return euler_poly(index).compose(point)
    return euler_value(index, to_rational(point))


def euler_convolution(args: Sequence[Any], m: int) -> EulerConvolution:
    """
    Multinomial convolution of Euler polynomials, folded one argument at a time:
    E^(r)_m(..., y) = sum_k C(m,k) E^(r-1)_k(...) E_{m-k}(y).

    An argument may be a polynomial (in n); the value is then a polynomial.

    Examples:
        >>> euler_convolution([HALF, HALF], 2).value
        Fraction(-1, 2)
    """
    if not args:
        raise ValueError("Euler convolution needs at least one argument")
    conv = [_euler_at(j, args[0]) for j in range(m + 1)]
    for point in args[1:]:
        single = [_euler_at(j, point) for j in range(m + 1)]
        conv = [
            sum((conv[k] * single[j - k] * comb(j, k) for k in range(j + 1)), Fraction(0))
            for j in range(m + 1)
        ]
    return EulerConvolution(r=len(args), m=m, args=tuple(args), value=conv[m])


@lru_cache(maxsize=None)
def _half_convolution(count: int, m: int, last: Optional[Fraction] = None) -> Fraction:
    """E^(count)_m(1/2, ..., 1/2[, last]); with no arguments at all it is [m == 0]."""
    args = [HALF] * count + ([last] if last is not None else [])
    if not args:
        return Fraction(1 if m == 0 else 0)
    return euler_convolution(args, m).value


# Closed form


def _alt_closed(r: int, m: int, x: Fraction, n: int, sign: str) -> Fraction:
    head = (-1) ** n * Fraction(1, 2 ** r) * _half_convolution(r - 1, m, x + n + Fraction(r + 1, 2))
    tail = Fraction(0)
    for k in range(1, r + 1):
        binomial = binomial_poly(Fraction(n + r - k - 1), r - k)
        tail += binomial * Fraction(1, 2 ** k) * _half_convolution(k - 1, m, x + Fraction(k + 1, 2))
    return head - tail if sign == SIGN_MINUS else head + tail


def _lemma_oracle(sign: str) -> bool:
    for r in (1, 2):
        for m in (0, 1, 2):
            for x in (Fraction(0), Fraction(1, 3)):
                brute = alt_bruteforce_values(r, m, x, 5)
                if any(_alt_closed(r, m, x, n, sign) != brute[n - 1] for n in range(1, 6)):
                    return False
    return True


def resolve_correction_sign() -> str:
    """Sign of the correction sum in the r-fold alternating closed form."""
    return resolve_variant(
        "alternating-correction-sign",
        {name: (lambda name=name: _lemma_oracle(name)) for name in (SIGN_MINUS, SIGN_PLUS)},
    )


def alt_rfold_closed(r: int, m: int, x: Any, n: int, variant: Optional[str] = None) -> Fraction:
    """
    sum^r (-1)^n (n+x)^m in closed form:

        (-1)^n 2^(-r) E^(r)_m(1/2, ..., 1/2, x+n+(r+1)/2)
            - sum_{k=1}^{r} C(n+r-k-1, r-k) 2^(-k) E^(k)_m(1/2, ..., 1/2, x+(k+1)/2)

    The sign of the correction sum is resolved by oracle unless ``variant`` names it.

    Examples:
        >>> alt_rfold_closed(1, 2, 0, 3)
        Fraction(-6, 1)
    """
    if r < 1 or n < 1:
        raise ValueError(f"Need r >= 1 and n >= 1, got r={r}, n={n}")
    return _alt_closed(r, m, to_rational(x), n, variant or resolve_correction_sign())


def alt_rfold_closed_poly(r: int, m: int, x: Any, parity: str) -> Polynomial:
    """The closed form for one parity of n, as a polynomial in n at a fixed x."""
    x = to_rational(x)
    sign = resolve_correction_sign()
    head_sign = 1 if parity == "even" else -1
    last = N + (x + Fraction(r + 1, 2))
    head = _lift_n(euler_convolution([HALF] * (r - 1) + [last], m).value) * Fraction(head_sign, 2 ** r)
    tail = Polynomial("n")
    for k in range(1, r + 1):
        constant = Fraction(1, 2 ** k) * _half_convolution(k - 1, m, x + Fraction(k + 1, 2))
        tail = tail + binomial_poly(N + (r - k - 1), r - k) * constant
    return head - tail if sign == SIGN_MINUS else head + tail


def _lift_n(value: Any) -> Polynomial:
    return value if isinstance(value, Polynomial) else Polynomial("n", [value])


# Special values


def special_value_direct(k: int, m: int) -> Fraction:
    """E^(k)_m(1/2, ..., 1/2, (k+1)/2) from the convolution itself."""
    return _half_convolution(k - 1, m, Fraction(k + 1, 2))


def _recurrence(k: int, m: int, parity: str, odd_sign: str) -> Fraction:
    total = Fraction(0)
    if parity == "even":
        for i in range(k // 2 + 1):
            inner = sum(
                (comb(i, j) * (-1) ** j * _half_convolution(2 * j, 2 * m) for j in range(i + 1)), Fraction(0)
            )
            total += comb(k, 2 * i) * inner
        return total
    shift = 0 if odd_sign == ODD_SIGN_PLAIN else 1
    for i in range(k // 2 + 1):
        inner = sum(
            (
                comb(i, j) * (-1) ** (j + shift) * _half_convolution(2 * j, 2 * m + 1, Fraction(1))
                for j in range(i + 1)
            ),
            Fraction(0),
        )
        total += comb(k, 2 * i + 1) * inner
    return total


def _recurrence_oracle(odd_sign: str) -> bool:
    return all(
        _recurrence(k, m, "odd", odd_sign) == special_value_direct(k, 2 * m + 1)
        for k in range(1, 4)
        for m in range(3)
    )


def resolve_odd_recurrence_sign() -> str:
    return resolve_variant(
        "euler-special-value-odd-sign",
        {name: (lambda name=name: _recurrence_oracle(name)) for name in (ODD_SIGN_PLAIN, ODD_SIGN_AS_PRINTED)},
    )


def special_value_recurrence(k: int, m: int, parity: str, variant: Optional[str] = None) -> Fraction:
    """
    E^(k)_{2m}(1/2, ..., 1/2, (k+1)/2) (parity "even") or E^(k)_{2m+1}(...) ("odd")
    from convolutions at 1/2 only:

        even: sum_{i <= k/2} C(k,2i) sum_j C(i,j) (-1)^j E^(2j)_{2m}(1/2, ..., 1/2)
        odd:  sum_{i <= k/2} C(k,2i+1) sum_j C(i,j) s_j E^(2j+1)_{2m+1}(1/2, ..., 1/2, 1)

    with E^(0)_{2m} = [m == 0]. The odd-case sign s_j is resolved by oracle
    unless ``variant`` names it.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if parity not in ("even", "odd"):
        raise ValueError(f"Parity must be 'even' or 'odd', got {parity!r}")
    odd_sign = ODD_SIGN_PLAIN
    if parity == "odd":
        odd_sign = variant or resolve_odd_recurrence_sign()
    return _recurrence(k, m, parity, odd_sign)


# Structure fits


@dataclass(frozen=True)
class StructureFit:
    """
    sum^fold (-1)^n n^power = (-1)^n f_prefactor(n) F(nu) + g_prefactor(n) G(nu).

    F and G are polynomials in "nu"; ``nu`` and the prefactors are polynomials in n.
    """
    fold: int
    power: int
    r: int
    m: int
    case: str
    F: Polynomial
    G: Polynomial
    nu: Polynomial
    f_prefactor: Polynomial
    g_prefactor: Polynomial
    g_degree_bound: int
    window: int
    per_parity: int

    def evaluate(self, n: int) -> Fraction:
        nu = self.nu.specialize({"n": n})
        f = self.F.specialize({"nu": nu}) * self.f_prefactor.specialize({"n": n})
        g = self.G.specialize({"nu": nu}) * self.g_prefactor.specialize({"n": n})
        return (-1) ** n * f + g


def _case_shape(fold: int, power: int, odd_odd_prefactor: str):
    r, m = fold // 2, power // 2
    if fold % 2 == 0:
        nu = N * (N + 2 * r)
        if power % 2 == 0:
            return CASE_EVEN_FOLD_EVEN_POWER, r, m, nu, N ** 0, N ** 0, r - 1
        return CASE_EVEN_FOLD_ODD_POWER, r, m, nu, N + r, N + r, r - 1
    nu = N * (N + (2 * r + 1))
    if power % 2 == 0:
        return CASE_ODD_FOLD_EVEN_POWER, r, m, nu, N ** 0, 2 * N + (2 * r + 1), r - 1
    f_prefactor = 2 * N + (2 * r + 1) if odd_odd_prefactor == PREFACTOR_CENTERED else N + r
    return CASE_ODD_FOLD_ODD_POWER, r, m, nu, f_prefactor, N ** 0, r


def _to_nu(part: Polynomial, prefactor: Polynomial, nu: Polynomial, label: str) -> Polynomial:
    try:
        reduced = exact_divide(part, prefactor) if prefactor.degree() > 0 else part / prefactor.constant_term()
        return poly_in_basis(reduced, nu, "nu")
    except (InexactDivisionError, BasisConversionError) as e:
        raise StructureViolationError(f"{label}: {e}") from e


def _fit(fold: int, power: int, odd_odd_prefactor: str) -> StructureFit:
    case, r, m, nu, f_prefactor, g_prefactor, g_bound = _case_shape(fold, power, odd_odd_prefactor)
    degree = fold + power
    per_parity = degree + 3
    window = 2 * degree + 10
    values = alt_bruteforce_values(fold, power, 0, max(window, 2 * per_parity))

    even = poly_interpolate([(n, values[n - 1]) for n in range(2, 2 * per_parity + 1, 2)], variable="n")
    odd = poly_interpolate([(n, values[n - 1]) for n in range(1, 2 * per_parity, 2)], variable="n")
    for label, interpolant in (("even", even), ("odd", odd)):
        if interpolant.degree() > degree:
            raise StructureViolationError(
                f"{case} fold={fold} power={power}: {label}-n interpolant has degree {interpolant.degree()} > {degree}"
            )

    label = f"{case} fold={fold} power={power}"
    big_f = _to_nu((even - odd) / 2, f_prefactor, nu, f"{label} F")
    big_g = _to_nu((even + odd) / 2, g_prefactor, nu, f"{label} G")

    if big_f.degree() != m:
        raise StructureViolationError(f"{label}: deg F = {big_f.degree()}, expected {m}")
    if big_g.degree() > g_bound:
        raise StructureViolationError(f"{label}: deg G = {big_g.degree()} exceeds {g_bound}")

    fit = StructureFit(
        fold=fold,
        power=power,
        r=r,
        m=m,
        case=case,
        F=big_f,
        G=big_g,
        nu=nu,
        f_prefactor=f_prefactor,
        g_prefactor=g_prefactor,
        g_degree_bound=g_bound,
        window=window,
        per_parity=per_parity,
    )
    for n in range(1, window + 1):
        if fit.evaluate(n) != values[n - 1]:
            raise StructureViolationError(f"{label}: reconstruction differs from the direct sum at n={n}")
    return fit


def _prefactor_oracle(choice: str) -> bool:
    try:
        for fold, power in ((1, 1), (3, 1), (1, 3)):
            _fit(fold, power, choice)
    except StructureViolationError:
        return False
    return True


def resolve_odd_odd_prefactor() -> str:
    """F prefactor when both the fold count and the power are odd."""
    return resolve_variant(
        "structure-odd-odd-prefactor",
        {name: (lambda name=name: _prefactor_oracle(name)) for name in (PREFACTOR_CENTERED, PREFACTOR_N_PLUS_R)},
    )


@lru_cache(maxsize=None)
def structure_fit(fold: int, power: int, variant: Optional[str] = None) -> StructureFit:
    """
    Recover F and G for sum^fold (-1)^n n^power.

    Even-n and odd-n samples are interpolated separately; their half
    difference is the (-1)^n part and their half sum the rest. Each part is
    divided by its prefactor and rewritten in nu.

    Raises:
        StructureViolationError: a degree bound is exceeded, a division or
            change of basis leaves a remainder, or the reconstruction fails
    """
    if fold < 1 or power < 1:
        raise ValueError(f"Need fold >= 1 and power >= 1, got fold={fold}, power={power}")
    choice = PREFACTOR_CENTERED
    if fold % 2 == 1 and power % 2 == 1:
        choice = variant or resolve_odd_odd_prefactor()
    fit = _fit(fold, power, choice)
    logger.debug(f"Structure fit {fit.case} fold={fold} power={power}: deg F={fit.F.degree()}, deg G={fit.G.degree()}")
    return fit


# Identities


def binomial_even_sum_check(max_n: int = 24) -> CheckResult:
    """sum_{i=j}^{n/2} C(n,2i) C(i,j) = 2^(n-2j-1) C(n-j,j) n/(n-j) for 1 <= j < n <= max_n."""
    for n in range(2, max_n + 1):
        for j in range(1, n):
            lhs = sum(comb(n, 2 * i) * comb(i, j) for i in range(j, n // 2 + 1))
            rhs = Fraction(2) ** (n - 2 * j - 1) * comb(n - j, j) * Fraction(n, n - j)
            if lhs != rhs:
                return failed("binomial_even_sum", {"n": n, "j": j, "lhs": lhs, "rhs": rhs})
    return passed("binomial_even_sum", max_n=max_n)


def vandermonde_check(max_ij: int = 6, max_nm: int = 20) -> CheckResult:
    """sum_k C(n-k, i) C(m+k, j) = C(m+n+1, i+j+1), k over -m..n."""
    for i in range(max_ij + 1):
        for j in range(max_ij + 1):
            for n in range(max_nm + 1):
                for m in range(max_nm + 1):
                    lhs = sum(comb(n - k, i) * comb(m + k, j) for k in range(-m, n + 1))
                    if lhs != comb(m + n + 1, i + j + 1):
                        return failed("vandermonde_type", {"i": i, "j": j, "n": n, "m": m, "lhs": lhs})
    return passed("vandermonde_type", max_ij=max_ij, max_nm=max_nm)


def product_rewrite_check(max_r: int = 5) -> CheckResult:
    """(n+r)(n+2r-j-1)_{2r-2j-1} = prod_{i=1}^{r-j} [n(n+2r) + (2r-j-i)(i+j)] for j < r."""
    for r in range(1, max_r + 1):
        nu = N * (N + 2 * r)
        for j in range(r):
            lhs = (N + r) * falling_factorial(N + (2 * r - j - 1), 2 * r - 2 * j - 1)
            rhs = N ** 0
            for i in range(1, r - j + 1):
                rhs = rhs * (nu + (2 * r - j - i) * (i + j))
            if lhs != rhs:
                return failed("even_product_rewrite", {"r": r, "j": j, "lhs": lhs, "rhs": rhs})
    return passed("even_product_rewrite", max_r=max_r)


def identity_checks() -> List[CheckResult]:
    """The binomial identities behind the even-fold structure theorem."""
    return [binomial_even_sum_check(), vandermonde_check(), product_rewrite_check()]


def lemma_oracle_check(r: int, m: int, xs: Sequence[Fraction], max_n: int) -> CheckResult:
    for x in xs:
        brute = alt_bruteforce_values(r, m, x, max_n)
        for n in range(1, max_n + 1):
            closed = alt_rfold_closed(r, m, x, n)
            if closed != brute[n - 1]:
                return failed(
                    "alternating_rfold_closed", {"x": x, "n": n, "expected": brute[n - 1], "actual": closed}, r=r, m=m
                )
    return passed("alternating_rfold_closed", r=r, m=m, max_n=max_n)


def recurrence_check(k: int, m: int, parity: str) -> CheckResult:
    power = 2 * m if parity == "even" else 2 * m + 1
    direct = special_value_direct(k, power)
    value = special_value_recurrence(k, m, parity)
    if direct == value:
        return passed("euler_special_value", k=k, m=m, parity=parity)
    return failed("euler_special_value", {"expected": direct, "actual": value}, k=k, m=m, parity=parity)


def structure_check(fold: int, power: int) -> CheckResult:
    try:
        fit = structure_fit(fold, power)
    except StructureViolationError as e:
        return failed("structure_fit", {"error": str(e)}, fold=fold, power=power)
    return passed(
        "structure_fit", fold=fold, power=power, case=fit.case, deg_F=fit.F.degree(), deg_G=fit.G.degree()
    )
