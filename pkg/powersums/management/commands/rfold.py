"""
Closed forms of r-fold sums of (x+n)^m and (x+n)_l.

Matching parities (odd folds with odd powers, even with even) have closed
forms; the other cases are interpolated at a rational x.
"""
from powersums.cli import PowerSumsCommand
from powersums.exceptions import ConfigError
from powersums.rendering import (
    closed_form_document,
    coefficient_dict,
    polynomial_latex,
    render_closed_form,
    render_report,
    report_document,
)
from powersums.rfold import correction_check, rfold_closed_form, rfold_falling, rfold_fit, rfold_oracle_check
from powersums.schemas import ClosedFormSchema, ReportSchema, dump_document
from powersums.verification import VerificationFailedError


class Command(PowerSumsCommand):
    help = "Print the closed form of an r-fold power or falling-factorial sum"
    subcommand = "rfold"

    def add_command_arguments(self, parser):
        parser.add_argument("--r", type=int, required=True, help="number of folds")
        target = parser.add_mutually_exclusive_group(required=True)
        target.add_argument("--power", type=int)
        target.add_argument("--falling", type=int, metavar="L", help="sum the falling factorial (x+n)_L instead")
        parser.add_argument("--x", default="sym", help="'sym' or an exact rational p/q")
        parser.add_argument("--verify", action="store_true", help="check the closed form against brute force")
        parser.add_argument("--max-n", type=int)

    def run(self, config, options):
        if options.get("falling") is not None:
            if options["falling"] < 0:
                raise ConfigError(f"--falling must be nonnegative, got {options['falling']}")
            form = rfold_falling(config.r, options["falling"])
        else:
            if config.power is None or config.power < 1:
                raise ConfigError("--power must be positive")
            form = rfold_closed_form(config.r, config.power)
            if form is None:
                return self._fit(config)

        if options.get("verify"):
            return self._verify(form, config)
        if config.fmt == "json":
            return dump_document(ClosedFormSchema, closed_form_document(form, config.x))
        return render_closed_form(form, config.fmt, config.x)

    def _fit(self, config):
        if config.x is None:
            raise ConfigError(
                f"No closed form for {config.r} folds of power {config.power}; give --x p/q to interpolate"
            )
        poly = rfold_fit(config.r, config.power, config.x)
        if config.fmt == "json":
            document = {
                "kind": "fit",
                "folds": config.r,
                "power": config.power,
                "x": str(config.x),
                "value": coefficient_dict(poly),
                "correction": None,
            }
            return dump_document(ClosedFormSchema, document)
        if config.fmt == "latex":
            return f"\\Sigma^{{{config.r}}}(x+n)^{{{config.power}}}\\big|_{{x={config.x}}} &= {polynomial_latex(poly)}"
        return f"sum^{config.r} (x+n)^{config.power} at x = {config.x}\n  = {poly}"

    def _verify(self, form, config):
        xs = config.xs if config.x is None else (config.x,)
        results = [rfold_oracle_check(form, xs, config.max_n), correction_check(form)]
        output = (
            dump_document(ReportSchema, report_document(results))
            if config.fmt == "json"
            else render_report(results, config.fmt)
        )
        self.stdout.write(output)
        failing = [r for r in results if not r.passed]
        if failing:
            raise VerificationFailedError(f"{failing[0].name} failed: {failing[0].to_dict()['counterexample']}")
        return ""
