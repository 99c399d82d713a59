"""
Unit tests for text, LaTeX and JSON renderings and their schemas.
"""
import json
from fractions import Fraction

import pytest

from powersums.alternating import structure_fit
from powersums.checks import failed, passed
from powersums.exact_algebra import Polynomial
from powersums.faulhaber import ProgressionSpec, alternating_coeffs, faulhaber_coeffs, progression_power_sum
from powersums.rendering import (
    closed_form_document,
    expansion_document,
    polynomial_latex,
    progression_document,
    rational_latex,
    render_closed_form,
    render_expansion,
    render_progression,
    render_report,
    render_sequence,
    render_structure_fit,
    report_document,
    sequence_document,
    structure_fit_document,
)
from powersums.rfold import rfold_odd
from powersums.schemas import (
    ClosedFormSchema,
    ExpansionSchema,
    ReportSchema,
    SchemaMismatchError,
    SequenceSchema,
    StructureFitSchema,
    dump_document,
)
from powersums.special_sequences import sequence_table


class TestLatex:
    """Test LaTeX for rationals and polynomials."""

    def test_rationals(self):
        """Test integers stay bare and fractions use frac."""
        assert rational_latex(Fraction(-1, 6)) == "-\\frac{1}{6}"
        assert rational_latex(7) == "7"

    def test_unit_coefficients(self):
        """Test coefficients of one are dropped."""
        assert polynomial_latex(Polynomial("n", [0, 1, 1])) == "n^{2} + n"
        assert polynomial_latex(Polynomial("nu", [Fraction(1, 2), -1])) == "-\\nu + \\frac{1}{2}"

    def test_nested(self):
        """Test polynomial coefficients are parenthesized."""
        p = Polynomial("n", [0, Polynomial("x", [1, 2]), 1])
        assert polynomial_latex(p) == "n^{2} + \\left(2x + 1\\right)n"

    def test_zero(self):
        """Test the zero polynomial renders as 0."""
        assert polynomial_latex(Polynomial("x")) == "0"


class TestExpansionRendering:
    """Test rendering lambda-expansions."""

    def test_latex_at_zero(self):
        """Test the sum of fifth powers at x = 0."""
        text = render_expansion(faulhaber_coeffs(3), "latex", Fraction(0))
        assert "\\frac{1}{6}\\lambda^{3} - \\frac{1}{12}\\lambda^{2}" in text
        assert text.splitlines()[-1] == "\\lambda &= n^{2} + n"

    def test_text_at_zero(self):
        """Test the sum of cubes as text."""
        assert render_expansion(faulhaber_coeffs(2), "text", Fraction(0)) == "\n".join(
            ["sum_{i=1}^{n} i^3", "  = 1/4*lambda^2 + 1/2*lambda", "  lambda = n^2 + n"]
        )

    def test_text_symbolic(self):
        """Test symbolic x keeps x in the base and in lambda."""
        lines = render_expansion(faulhaber_coeffs(1), "text").splitlines()
        assert lines[0] == "sum_{i=1}^{n} (i + x)^1"
        assert lines[-1] == "  lambda = n^2 + (2*x + 1)*n"

    def test_alternating_rows(self):
        """Test alternating expansions get one row per parity of n."""
        text = render_expansion(alternating_coeffs(1), "text", Fraction(0))
        assert "  [n even] = 1/2*lambda" in text
        assert "[n odd]" in text

    def test_unsupported_format(self):
        """Test json is not a rendering format for expansions."""
        with pytest.raises(ValueError):
            render_expansion(faulhaber_coeffs(1), "json")

    def test_document_validates(self):
        """Test expansion documents round-trip through their schema."""
        doc = expansion_document(faulhaber_coeffs(2))
        data = json.loads(dump_document(ExpansionSchema, doc))
        assert data["coeffs"][2] == {"num": "1", "den": "4"}
        assert data["definition"]["variable"] == "n"
        assert data["constants"] is None

    def test_alternating_document(self):
        """Test alternating documents carry both parity constants."""
        data = json.loads(dump_document(ExpansionSchema, expansion_document(alternating_coeffs(1), Fraction(0))))
        assert data["constants"]["even"] == {"num": "0", "den": "1"}
        assert data["x"] == "0"


class TestProgressionRendering:
    """Test rendering sums over progressions."""

    def test_text(self):
        """Test the sum of cubes of odd numbers."""
        spec = ProgressionSpec(-1, 2)
        text = render_progression(spec, 2, progression_power_sum(spec, 2), "text")
        assert text.splitlines() == ["sum_{i=1}^{n} (2*i - 1)^3", "  = 2*mu^2 - mu", "  mu = n^2"]

    def test_document(self):
        """Test progression documents validate as expansions in mu."""
        spec = ProgressionSpec(-1, 2)
        doc = progression_document(spec, 2, progression_power_sum(spec, 2))
        data = json.loads(dump_document(ExpansionSchema, doc))
        assert data["variable"] == "mu"
        assert data["coeffs"] == [{"num": "0", "den": "1"}, {"num": "-1", "den": "1"}, {"num": "2", "den": "1"}]


class TestClosedFormRendering:
    """Test rendering r-fold closed forms."""

    def test_text(self):
        """Test sum^3 n at x = 0."""
        lines = render_closed_form(rfold_odd(1, 1), "text", Fraction(0)).splitlines()
        assert lines[0] == "sum^3 n^1"
        assert lines[1] == "  = 1/24*n^4 + 1/4*n^3 + 11/24*n^2 + 1/4*n"
        assert lines[2] == "  correction = 0"

    def test_document(self):
        """Test closed-form documents validate."""
        data = json.loads(dump_document(ClosedFormSchema, closed_form_document(rfold_odd(1, 1))))
        assert data["folds"] == 3
        assert data["value"]["variable"] == "n"


class TestStructureRendering:
    """Test rendering structure fits."""

    def test_text(self):
        """Test the case label and F, G lines."""
        text = render_structure_fit(structure_fit(2, 2), "text")
        assert "case (2r,2m)" in text
        assert "  F(nu) = 1/4*nu + 1/8" in text
        assert "  G(nu) = -1/8" in text

    def test_document(self):
        """Test structure documents validate."""
        data = json.loads(dump_document(StructureFitSchema, structure_fit_document(structure_fit(1, 1))))
        assert data["F"] == {"variable": "nu", "coeffs": [{"num": "1", "den": "4"}]}
        assert data["g_degree_bound"] == 0


class TestSequenceRendering:
    """Test rendering sequence tables."""

    def test_bernoulli_text(self):
        """Test one line per index with number and polynomial."""
        lines = render_sequence("bernoulli", sequence_table("bernoulli", 2), "text").splitlines()
        assert lines[1] == "B_1 = -1/2    B_1(x) = x - 1/2"

    def test_central_text(self):
        """Test central factorial rows."""
        lines = render_sequence("central", sequence_table("central", 3), "text").splitlines()
        assert lines[2] == "T(3, 1..3) = 1/4, 0, 1"

    def test_document(self):
        """Test sequence documents validate with absent parts as null."""
        doc = sequence_document("central", 2, sequence_table("central", 2))
        data = json.loads(dump_document(SequenceSchema, doc))
        assert data["numbers"] is None
        assert data["rows"][1][1] == {"num": "1", "den": "1"}


class TestReports:
    """Test check reports and their schema."""

    def test_text(self):
        """Test pass and fail lines and the summary."""
        results = [passed("alpha", n=3), failed("beta", {"n": 4}, n=4)]
        lines = render_report(results, "text").splitlines()
        assert lines[0] == "PASS  alpha(n=3)"
        assert lines[1] == "FAIL  beta(n=4)"
        assert lines[-1] == "1/2 checks passed"

    def test_latex(self):
        """Test the LaTeX table escapes underscores."""
        text = render_report([passed("euler_numbers", n=1)], "latex")
        assert "\\texttt{euler\\_numbers} & pass \\\\" in text

    def test_document(self):
        """Test report documents use the pass key and validate."""
        doc = report_document([passed("alpha", x=Fraction(1, 2)), failed("beta", {"actual": Fraction(3)})])
        data = json.loads(dump_document(ReportSchema, doc))
        assert data["all_pass"] is False
        assert data["checks"][0] == {"name": "alpha", "params": {"x": "1/2"}, "pass": True, "counterexample": None}

    def test_inconsistent_all_pass(self):
        """Test all_pass must agree with the checks."""
        doc = report_document([failed("beta", {"n": 1})])
        doc["all_pass"] = True
        with pytest.raises(SchemaMismatchError):
            dump_document(ReportSchema, doc)

    def test_extra_key(self):
        """Test unknown keys are rejected."""
        doc = report_document([passed("alpha")])
        doc["extra"] = 1
        with pytest.raises(SchemaMismatchError):
            dump_document(ReportSchema, doc)

    def test_bad_denominator(self):
        """Test a zero denominator is rejected."""
        doc = sequence_document("central", 1, {"rows": [[Fraction(1)]]})
        doc["rows"][0][0]["den"] = "0"
        with pytest.raises(SchemaMismatchError):
            dump_document(SequenceSchema, doc)
