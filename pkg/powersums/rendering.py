"""
Text, LaTeX and JSON renderings of the package's objects.

Text uses plain p/q rationals and the variable names as written
("lambda", "mu", "nu"). LaTeX uses \\frac for rationals and \\lambda,
\\mu, \\nu for the substitution variables. JSON documents are plain dicts
shaped for ``schemas``.
"""
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .alternating import StructureFit
from .checks import CheckResult
from .exact_algebra import Polynomial, rational_to_dict, to_rational
from .faulhaber import ODD_POWER_SUM, LambdaExpansion, ProgressionSpec, lambda_poly
from .rfold import FALLING_FACTORIAL, RFoldClosedForm

FORMATS = ("text", "latex", "json")

SYMBOLS = {"lambda": r"\lambda", "mu": r"\mu", "nu": r"\nu"}


# Scalars and polynomials


def rational_latex(value: Any) -> str:
    r"""
    Examples:
        >>> rational_latex(Fraction(-1, 6))
        '-\\frac{1}{6}'
        >>> rational_latex(3)
        '3'
    """
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    sign = "-" if value < 0 else ""
    return f"{sign}\\frac{{{abs(value.numerator)}}}{{{value.denominator}}}"


def _latex_monomial(variable: str, power: int) -> str:
    symbol = SYMBOLS.get(variable, variable)
    if power == 0:
        return ""
    if power == 1:
        return symbol
    return f"{symbol}^{{{power}}}"


def polynomial_latex(p: Any) -> str:
    r"""
    LaTeX for a rational or a (nested) polynomial, highest power first.

    Examples:
        >>> polynomial_latex(Polynomial("lambda", [0, Fraction(-1, 12), Fraction(1, 6)]))
        '\\frac{1}{6}\\lambda^{2} - \\frac{1}{12}\\lambda'
    """
    if not isinstance(p, Polynomial):
        return rational_latex(p)
    if p.is_zero():
        return "0"
    terms = []
    for power in range(p.degree(), -1, -1):
        c = p[power]
        monomial = _latex_monomial(p.variable, power)
        if isinstance(c, Polynomial):
            inner = polynomial_latex(c)
            terms.append(f"\\left({inner}\\right){monomial}" if monomial else inner)
            continue
        if c == 0:
            continue
        if monomial and c == 1:
            terms.append(monomial)
        elif monomial and c == -1:
            terms.append(f"-{monomial}")
        else:
            terms.append(rational_latex(c) + monomial)
    return " + ".join(terms).replace("+ -", "- ")


def coefficient_text(c: Any) -> str:
    return str(c)


def coefficient_dict(c: Any) -> Dict[str, Any]:
    return c.to_dict() if isinstance(c, Polynomial) else rational_to_dict(to_rational(c))


def at_x(c: Any, x: Optional[Fraction]) -> Any:
    """Specialize x when a value is given; symbolic otherwise."""
    if x is None or not isinstance(c, Polynomial):
        return c
    return c.specialize({"x": x})


def _base(x: Optional[Fraction], index: str) -> Polynomial:
    return Polynomial(index, [Polynomial.generator("x") if x is None else x, 1])


def _wrap(text: str) -> str:
    return f"({text})" if " " in text or text.startswith("-") else text


# Lambda-expansions


def expansion_rows(expansion: LambdaExpansion, x: Optional[Fraction] = None) -> List[Tuple[Optional[str], Any]]:
    """(parity, polynomial in lambda) pairs; a single row with parity None for odd powers."""
    parities = (None,) if expansion.kind == ODD_POWER_SUM else ("even", "odd")
    return [(parity, at_x(expansion.as_lambda_polynomial(parity), x)) for parity in parities]


def render_expansion(expansion: LambdaExpansion, fmt: str, x: Optional[Fraction] = None) -> str:
    definition = at_x(lambda_poly(), x)
    odd = expansion.kind == ODD_POWER_SUM
    rows = expansion_rows(expansion, x)

    if fmt == "text":
        base = _wrap(str(_base(x, "i")))
        sign = "" if odd else "(-1)^(n-i) * "
        lines = [f"sum_{{i=1}}^{{n}} {sign}{base}^{expansion.power}"]
        for parity, poly in rows:
            label = "" if parity is None else f"[n {parity}] "
            lines.append(f"  {label}= {coefficient_text(poly)}")
        lines.append(f"  lambda = {coefficient_text(definition)}")
        return "\n".join(lines)

    if fmt == "latex":
        base = _wrap(polynomial_latex(_base(x, "i")))
        sign = "" if odd else "(-1)^{n-i}"
        lhs = f"\\sum_{{i=1}}^{{n}}{sign}{base}^{{{expansion.power}}}"
        lines = []
        for parity, poly in rows:
            suffix = "" if parity is None else f" \\quad (n\\ \\text{{{parity}}})"
            lines.append(f"{lhs} &= {polynomial_latex(poly)}{suffix} \\\\")
        lines.append(f"\\lambda &= {polynomial_latex(definition)}")
        return "\n".join(lines)

    raise ValueError(f"Unsupported format for expansions: {fmt!r}")


def expansion_document(expansion: LambdaExpansion, x: Optional[Fraction] = None) -> Dict[str, Any]:
    constants = None
    if expansion.kind != ODD_POWER_SUM:
        constants = {parity: coefficient_dict(at_x(expansion.constant(parity), x)) for parity in ("even", "odd")}
    return {
        "kind": expansion.kind,
        "m": expansion.m,
        "power": expansion.power,
        "x": None if x is None else str(x),
        "variable": "lambda",
        "definition": lambda_poly().to_dict() if x is None else Polynomial("n", [0, 2 * x + 1, 1]).to_dict(),
        "coeffs": [coefficient_dict(at_x(c, x)) for c in expansion.coeffs],
        "constants": constants,
    }


def render_progression(spec: ProgressionSpec, m: int, poly: Polynomial, fmt: str) -> str:
    term = Polynomial("i", [spec.a, spec.b])
    if fmt == "text":
        return "\n".join(
            [
                f"sum_{{i=1}}^{{n}} {_wrap(str(term))}^{2 * m - 1}",
                f"  = {poly}",
                f"  mu = {spec.mu_poly()}",
            ]
        )
    if fmt == "latex":
        return "\n".join(
            [
                f"\\sum_{{i=1}}^{{n}}{_wrap(polynomial_latex(term))}^{{{2 * m - 1}}} &= {polynomial_latex(poly)} \\\\",
                f"\\mu &= {polynomial_latex(spec.mu_poly())}",
            ]
        )
    raise ValueError(f"Unsupported format for progressions: {fmt!r}")


def progression_document(spec: ProgressionSpec, m: int, poly: Polynomial) -> Dict[str, Any]:
    return {
        "kind": "progression",
        "m": m,
        "power": 2 * m - 1,
        "x": str(spec.x),
        "variable": "mu",
        "definition": spec.mu_poly().to_dict(),
        "coeffs": [coefficient_dict(poly[k]) for k in range(max(poly.degree(), 0) + 1)],
        "constants": None,
    }


# r-fold closed forms


def _rfold_summand(form: RFoldClosedForm, x: Optional[Fraction], fmt: str) -> str:
    base = _base(x, "n")
    if fmt == "latex":
        text = _wrap(polynomial_latex(base))
        exponent = f"_{{{form.m_or_l}}}" if form.kind == FALLING_FACTORIAL else f"^{{{form.m_or_l}}}"
        return f"\\Sigma^{{{form.r}}}{text}{exponent}"
    exponent = f"_{form.m_or_l}" if form.kind == FALLING_FACTORIAL else f"^{form.m_or_l}"
    return f"sum^{form.r} {_wrap(str(base))}{exponent}"


def render_closed_form(form: RFoldClosedForm, fmt: str, x: Optional[Fraction] = None) -> str:
    value = at_x(form.value, x)
    correction = at_x(form.correction, x)
    lhs = _rfold_summand(form, x, fmt)
    if fmt == "text":
        return "\n".join([lhs, f"  = {value}", f"  correction = {correction}"])
    if fmt == "latex":
        return "\n".join(
            [f"{lhs} &= {polynomial_latex(value)} \\\\", f"\\text{{correction}} &= {polynomial_latex(correction)}"]
        )
    raise ValueError(f"Unsupported format for closed forms: {fmt!r}")


def closed_form_document(form: RFoldClosedForm, x: Optional[Fraction] = None) -> Dict[str, Any]:
    return {
        "kind": form.kind,
        "folds": form.r,
        "power": form.m_or_l,
        "x": None if x is None else str(x),
        "value": coefficient_dict(at_x(form.value, x)),
        "correction": coefficient_dict(at_x(form.correction, x)),
    }


# Structure fits


def render_structure_fit(fit: StructureFit, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(
            [
                f"sum^{fit.fold} (-1)^n n^{fit.power} = (-1)^n * P(n) * F(nu) + Q(n) * G(nu)   case {fit.case}",
                f"  nu = {fit.nu}",
                f"  P(n) = {fit.f_prefactor}",
                f"  Q(n) = {fit.g_prefactor}",
                f"  F(nu) = {fit.F}",
                f"  G(nu) = {fit.G}",
            ]
        )
    if fmt == "latex":
        f_pre = _wrap(polynomial_latex(fit.f_prefactor))
        g_pre = _wrap(polynomial_latex(fit.g_prefactor))
        f_pre = "" if f_pre == "1" else f_pre
        g_pre = "" if g_pre == "1" else g_pre
        return "\n".join(
            [
                f"\\Sigma^{{{fit.fold}}}(-1)^{{n}}n^{{{fit.power}}} &= (-1)^{{n}}{f_pre}F(\\nu) + {g_pre}G(\\nu) \\\\",
                f"\\nu &= {polynomial_latex(fit.nu)} \\\\",
                f"F(\\nu) &= {polynomial_latex(fit.F)} \\\\",
                f"G(\\nu) &= {polynomial_latex(fit.G)}",
            ]
        )
    raise ValueError(f"Unsupported format for structure fits: {fmt!r}")


def structure_fit_document(fit: StructureFit) -> Dict[str, Any]:
    return {
        "fold": fit.fold,
        "power": fit.power,
        "case": fit.case,
        "r": fit.r,
        "m": fit.m,
        "nu": fit.nu.to_dict(),
        "F": coefficient_dict(fit.F),
        "G": coefficient_dict(fit.G),
        "f_prefactor": coefficient_dict(fit.f_prefactor),
        "g_prefactor": coefficient_dict(fit.g_prefactor),
        "g_degree_bound": fit.g_degree_bound,
    }


# Sequences


_SEQUENCE_SYMBOLS = {"bernoulli": "B", "euler": "E"}


def render_sequence(kind: str, table: Dict[str, list], fmt: str) -> str:
    lines = []
    if kind == "central":
        for m, row in enumerate(table["rows"], start=1):
            if fmt == "latex":
                cells = " & ".join(rational_latex(v) for v in row)
                lines.append(f"{m} & {cells} \\\\")
            else:
                lines.append(f"T({m}, 1..{m}) = {', '.join(str(v) for v in row)}")
        return "\n".join(lines)

    symbol = _SEQUENCE_SYMBOLS[kind]
    for n, (number, poly) in enumerate(zip(table["numbers"], table["polys"])):
        if fmt == "latex":
            lines.append(f"{symbol}_{{{n}}} &= {rational_latex(number)}, & {symbol}_{{{n}}}(x) &= {polynomial_latex(poly)} \\\\")
        else:
            lines.append(f"{symbol}_{n} = {number}    {symbol}_{n}(x) = {poly}")
    return "\n".join(lines)


def sequence_document(kind: str, max_index: int, table: Dict[str, list]) -> Dict[str, Any]:
    return {
        "kind": kind,
        "max": max_index,
        "numbers": [rational_to_dict(v) for v in table["numbers"]] if "numbers" in table else None,
        "polys": [p.to_dict() for p in table["polys"]] if "polys" in table else None,
        "rows": [[rational_to_dict(v) for v in row] for row in table["rows"]] if "rows" in table else None,
    }


# Check reports


def report_document(results: Sequence[CheckResult]) -> Dict[str, Any]:
    checks = [result.to_dict() for result in results]
    return {"checks": checks, "all_pass": all(result.passed for result in results)}


def render_report(results: Sequence[CheckResult], fmt: str) -> str:
    if fmt == "latex":
        rows = []
        for r in results:
            name = r.name.replace("_", "\\_")
            status = "pass" if r.passed else "FAIL"
            rows.append(f"\\texttt{{{name}}} & {status} \\\\")
        return "\n".join(["\\begin{tabular}{ll}", *rows, "\\end{tabular}"])
    lines = []
    for r in results:
        params = ", ".join(f"{k}={v}" for k, v in sorted(r.to_dict()["params"].items()))
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name}({params})")
        if not r.passed:
            lines.append(f"      counterexample: {r.to_dict()['counterexample']}")
    passed = sum(1 for r in results if r.passed)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)
