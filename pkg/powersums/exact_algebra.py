"""
Exact rational scalars and dense polynomial arithmetic.

Scalars are ``fractions.Fraction``. A ``Polynomial`` is an immutable dense
coefficient vector tagged with a variable name; coefficients are rationals
or polynomials in *other* variables, which is how bivariate objects such as
a polynomial in n with coefficients in x are represented.

Canonical form: trailing zero coefficients are stripped (the zero polynomial
has no coefficients) and constant nested coefficients are demoted to plain
rationals.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .exceptions import PowerSumsError

logger = logging.getLogger(__name__)

ExactRational = Fraction


class AlgebraError(PowerSumsError):
    """Base exception for polynomial algebra errors."""
    pass


class VariableMismatchError(AlgebraError):
    """Operands are polynomials in different variables."""
    pass


class UnboundVariableError(AlgebraError):
    """Evaluation left a variable without a value."""
    pass


class InterpolationError(AlgebraError):
    """Interpolation data is empty or has repeated abscissae."""
    pass


class InexactDivisionError(AlgebraError):
    """A division that must be exact left a nonzero remainder."""
    pass


class BasisConversionError(AlgebraError):
    """A polynomial is not expressible in powers of the requested basis."""
    pass


def to_rational(value: Any) -> Fraction:
    """
    Coerce an int, Fraction or ``"p/q"`` string to an exact rational.

    Floats are refused: they would smuggle rounding into exact code.

    Examples:
        >>> to_rational("-3/2")
        Fraction(-3, 2)
        >>> to_rational(4)
        Fraction(4, 1)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise AlgebraError(f"Not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise AlgebraError(f"Not an exact rational: {value!r}") from e
    raise AlgebraError(f"Not an exact rational: {value!r}")


def _is_zero(c: Any) -> bool:
    # nonzero nested coefficients always have degree >= 1 after normalization
    return not isinstance(c, Polynomial) and c == 0


def _normalize_coefficient(c: Any) -> Any:
    if isinstance(c, Polynomial):
        if c.degree() <= 0:
            return c.constant_term()
        return c
    return to_rational(c)


class Polynomial:
    """Dense univariate polynomial, possibly with polynomial coefficients."""

    __slots__ = ("_variable", "_coeffs", "_variables")

    def __init__(self, variable: str, coeffs: Iterable[Any] = ()):
        if not isinstance(variable, str) or not variable:
            raise AlgebraError(f"Invalid variable tag: {variable!r}")
        normalized = [_normalize_coefficient(c) for c in coeffs]
        while normalized and _is_zero(normalized[-1]):
            normalized.pop()

        variables = {variable}
        for c in normalized:
            if isinstance(c, Polynomial):
                if variable in c._variables:
                    raise VariableMismatchError(
                        f"Coefficient in {sorted(c._variables)} reuses outer variable {variable!r}"
                    )
                variables |= c._variables

        self._variable = variable
        self._coeffs: Tuple[Any, ...] = tuple(normalized)
        self._variables = frozenset(variables)

    # construction helpers

    @classmethod
    def constant(cls, value: Any, variable: str) -> "Polynomial":
        """Wrap a scalar (or a polynomial in another variable) as a constant."""
        return cls(variable, [value])

    @classmethod
    def generator(cls, variable: str) -> "Polynomial":
        """The polynomial ``variable`` itself."""
        return cls(variable, [0, 1])

    @classmethod
    def monomial(cls, variable: str, degree: int, coeff: Any = 1) -> "Polynomial":
        return cls(variable, [0] * degree + [coeff])

    # structure

    @property
    def variable(self) -> str:
        return self._variable

    @property
    def coeffs(self) -> Tuple[Any, ...]:
        return self._coeffs

    @property
    def variables(self) -> frozenset:
        """Every variable tag appearing at any nesting level."""
        return self._variables

    def degree(self) -> int:
        """Degree in the outer variable; the zero polynomial has degree -1."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def leading_coefficient(self) -> Any:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def constant_term(self) -> Any:
        return self._coeffs[0] if self._coeffs else Fraction(0)

    def __getitem__(self, power: int) -> Any:
        if power < 0:
            raise IndexError("No negative exponents")
        if power >= len(self._coeffs):
            return Fraction(0)
        return self._coeffs[power]

    # arithmetic

    def _promote(self, other: Any) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._variable == self._variable:
                return other
            raise VariableMismatchError(
                f"Cannot combine a polynomial in {other._variable!r} "
                f"with a polynomial in {self._variable!r}"
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial(self._variable, [other])
        return NotImplemented

    def __add__(self, other: Any) -> "Polynomial":
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(self._variable, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self._variable, [-c for c in self._coeffs])

    def __sub__(self, other: Any) -> "Polynomial":
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: Any) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial(self._variable)
        out: List[Any] = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other._coeffs):
                if _is_zero(b):
                    continue
                out[i + j] = out[i + j] + a * b
        return Polynomial(self._variable, out)

    __rmul__ = __mul__

    def scale(self, factor: Any) -> "Polynomial":
        """Multiply every coefficient by a ring element (rational or foreign polynomial)."""
        if isinstance(factor, Polynomial) and factor._variable == self._variable:
            raise VariableMismatchError("scale() takes a coefficient, not a polynomial in the same variable")
        return Polynomial(self._variable, [c * factor for c in self._coeffs])

    def __truediv__(self, divisor: Any) -> "Polynomial":
        if isinstance(divisor, Polynomial):
            return exact_divide(self, divisor)
        divisor = to_rational(divisor)
        if divisor == 0:
            raise ZeroDivisionError("Polynomial division by zero")
        return self.scale(1 / divisor)

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise AlgebraError(f"Exponent must be a nonnegative integer, got {exponent!r}")
        result = Polynomial(self._variable, [1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __divmod__(self, divisor: Any) -> Tuple["Polynomial", "Polynomial"]:
        divisor = self._promote(divisor)
        if divisor is NotImplemented:
            return NotImplemented
        if divisor.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        lead = divisor.leading_coefficient()
        if isinstance(lead, Polynomial):
            raise AlgebraError("Divisor must have a rational leading coefficient")

        dd = divisor.degree()
        remainder = list(self._coeffs)
        quotient: List[Any] = [Fraction(0)] * max(len(remainder) - dd, 0)
        for shift in range(len(remainder) - 1 - dd, -1, -1):
            c = remainder[shift + dd] / lead
            quotient[shift] = c
            if _is_zero(c):
                continue
            for i, d in enumerate(divisor._coeffs):
                remainder[shift + i] = remainder[shift + i] - c * d
        return Polynomial(self._variable, quotient), Polynomial(self._variable, remainder[:dd])

    # comparison

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Polynomial):
            if self.degree() <= 0 and other.degree() <= 0:
                return self.constant_term() == other.constant_term()
            return self._variable == other._variable and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self.degree() <= 0 and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.degree() <= 0:
            return hash(self.constant_term())
        return hash((self._variable, self._coeffs))

    # calculus and substitution

    def derivative(self) -> "Polynomial":
        return Polynomial(self._variable, [c * i for i, c in enumerate(self._coeffs)][1:])

    def compose(self, inner: Any) -> Any:
        """
        Return self(inner) expanded exactly.

        ``inner`` may be a rational (plain evaluation of the outer variable)
        or a polynomial in any variable; nested coefficients of self are
        carried along as constants of ``inner``'s variable.
        """
        if not isinstance(inner, Polynomial):
            return self.specialize({self._variable: inner})
        var = inner.variable
        acc = Polynomial(var)
        for c in reversed(self._coeffs):
            lifted = c if isinstance(c, Polynomial) and c.variable == var else Polynomial(var, [c])
            acc = acc * inner + lifted
        return acc

    def specialize(self, bindings: Mapping[str, Any]) -> Any:
        """
        Substitute rationals for the bound variables at every nesting level.

        Returns a rational once no variable is left, otherwise a polynomial.
        """
        coeffs = [c.specialize(bindings) if isinstance(c, Polynomial) else c for c in self._coeffs]
        if self._variable not in bindings:
            return _normalize_coefficient(Polynomial(self._variable, coeffs))
        value = to_rational(bindings[self._variable])
        acc: Any = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * value + c
        return _normalize_coefficient(acc)

    # serialization

    def to_dict(self) -> Dict[str, Any]:
        """JSON form: numerators and denominators as decimal strings."""
        return {
            "variable": self._variable,
            "coeffs": [c.to_dict() if isinstance(c, Polynomial) else rational_to_dict(c) for c in self._coeffs],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Polynomial":
        coeffs = []
        for item in data["coeffs"]:
            if "variable" in item:
                coeffs.append(cls.from_dict(item))
            else:
                coeffs.append(Fraction(int(item["num"]), int(item["den"])))
        return cls(data["variable"], coeffs)

    # display

    def __repr__(self) -> str:
        return f"Polynomial({self._variable!r}, {list(self._coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for power in range(self.degree(), -1, -1):
            c = self._coeffs[power]
            if _is_zero(c):
                continue
            terms.append(_text_term(c, self._variable, power))
        return " + ".join(terms).replace("+ -", "- ")


def _text_term(c: Any, variable: str, power: int) -> str:
    monomial = "" if power == 0 else variable if power == 1 else f"{variable}^{power}"
    if isinstance(c, Polynomial):
        return f"({c})*{monomial}" if monomial else str(c)
    if not monomial:
        return str(c)
    if c == 1:
        return monomial
    if c == -1:
        return f"-{monomial}"
    return f"{c}*{monomial}"


def rational_to_dict(value: Fraction) -> Dict[str, str]:
    return {"num": str(value.numerator), "den": str(value.denominator)}


Coefficient = Union[Fraction, Polynomial]


# Operations


def poly_arith(p: Polynomial, q: Any, op: str) -> Polynomial:
    """
    Apply ``op`` in {add, sub, mul, scale} to p and q.

    For ``scale`` q is a coefficient; otherwise q must be a polynomial in the
    same variable as p.

    Raises:
        VariableMismatchError: p and q are polynomials in different variables
        AlgebraError: unknown op

    Examples:
        >>> x = Polynomial.generator("x")
        >>> str(poly_arith(x + 1, x - 1, "mul"))
        'x^2 - 1'
    """
    if op == "scale":
        return p.scale(q)
    if isinstance(q, Polynomial) and q.variable != p.variable:
        raise VariableMismatchError(f"Variable mismatch: {p.variable!r} vs {q.variable!r}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise AlgebraError(f"Unknown polynomial operation: {op!r}")


def poly_compose(p: Polynomial, q: Any) -> Any:
    """Return p(q(.)) expanded exactly."""
    return p.compose(q)


def poly_eval(p: Polynomial, point: Union[Any, Mapping[str, Any]]) -> Fraction:
    """
    Evaluate p exactly.

    Args:
        p: polynomial, possibly nested
        point: a rational for the outer variable, or a mapping variable -> rational

    Raises:
        UnboundVariableError: some variable of p has no value
    """
    bindings = dict(point) if isinstance(point, Mapping) else {p.variable: point}
    value = p.specialize(bindings)
    if isinstance(value, Polynomial):
        missing = sorted(value.variables - set(bindings))
        raise UnboundVariableError(f"Unbound variables: {', '.join(missing)}")
    return value


def falling_factorial(v: Any, length: int) -> Any:
    """
    Lower factorial v(v-1)...(v-length+1); length 0 gives 1.

    ``v`` may be a polynomial (result expanded) or a rational.

    Examples:
        >>> str(falling_factorial(Polynomial.generator("x"), 2))
        'x^2 - x'
        >>> falling_factorial(5, 3)
        Fraction(60, 1)
    """
    if length < 0:
        raise AlgebraError(f"Falling factorial length must be nonnegative, got {length}")
    result: Any = Polynomial(v.variable, [1]) if isinstance(v, Polynomial) else Fraction(1)
    for j in range(length):
        result = result * (v - j)
    return result


def binomial_poly(v: Any, k: int) -> Any:
    """Binomial coefficient C(v, k) = (v)_k / k! with a polynomial (or rational) upper argument."""
    if k < 0:
        raise AlgebraError(f"Binomial lower index must be nonnegative, got {k}")
    return falling_factorial(v, k) / math.factorial(k)


def poly_interpolate(points: Sequence[Tuple[Any, Any]], variable: str = "v") -> Polynomial:
    """
    Unique polynomial of degree < len(points) through the given points.

    Newton divided differences over exact rationals, expanded to dense form.

    Raises:
        InterpolationError: no points, or a repeated abscissa
    """
    if not points:
        raise InterpolationError("Interpolation needs at least one point")
    xs = [to_rational(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise InterpolationError("Interpolation abscissae must be distinct")

    table = [to_rational(y) for _, y in points]
    newton = [table[0]]
    for j in range(1, len(xs)):
        table = [(table[i + 1] - table[i]) / (xs[i + j] - xs[i]) for i in range(len(table) - 1)]
        newton.append(table[0])

    v = Polynomial.generator(variable)
    result = Polynomial(variable, [newton[-1]])
    for j in range(len(newton) - 2, -1, -1):
        result = result * (v - xs[j]) + newton[j]
    return result


def exact_divide(p: Polynomial, d: Polynomial) -> Polynomial:
    """Divide p by d, insisting on a zero remainder."""
    quotient, remainder = divmod(p, d)
    if not remainder.is_zero():
        raise InexactDivisionError(f"Division of degree-{p.degree()} polynomial left remainder {remainder}")
    return quotient


def poly_in_basis(p: Polynomial, basis: Polynomial, variable: str) -> Polynomial:
    """
    Rewrite p as a polynomial in ``basis`` (e.g. n(n+2r+1) -> nu).

    Repeated division by ``basis``; each remainder must be a constant.

    Raises:
        BasisConversionError: some remainder has positive degree
    """
    if basis.degree() < 1:
        raise BasisConversionError("Basis polynomial must have positive degree")
    digits: List[Any] = []
    rest = p
    while not rest.is_zero():
        rest, remainder = divmod(rest, basis)
        if remainder.degree() > 0:
            raise BasisConversionError(
                f"Not a polynomial in {basis}: remainder {remainder} at power {len(digits)}"
            )
        digits.append(remainder.constant_term())
    return Polynomial(variable, digits)
