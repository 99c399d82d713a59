"""
r-fold alternating power sums: the closed form at one n, the closed form
per parity of n as a polynomial, or the (F, G) structure fit at x = 0.
"""
from powersums.alternating import alt_bruteforce, alt_rfold_closed, alt_rfold_closed_poly, structure_fit
from powersums.cli import PowerSumsCommand
from powersums.exceptions import ConfigError
from powersums.rendering import coefficient_dict, polynomial_latex, render_structure_fit, structure_fit_document
from powersums.schemas import AlternatingValueSchema, ParityFormSchema, StructureFitSchema, dump_document


class Command(PowerSumsCommand):
    help = "Evaluate or fit the r-fold alternating sum of (-1)^n (n+x)^m"
    subcommand = "alt"

    def add_command_arguments(self, parser):
        parser.add_argument("--r", type=int, required=True, help="number of folds")
        parser.add_argument("--power", type=int, required=True)
        parser.add_argument("--x", default="0", help="an exact rational p/q")
        mode = parser.add_mutually_exclusive_group()
        mode.add_argument("--n", help="evaluate at this n and compare with direct summation")
        mode.add_argument("--fit", action="store_true", help="recover the F, G structure at x = 0")

    def run(self, config, options):
        if config.x is None:
            raise ConfigError("alt needs a rational --x")
        if config.r < 1:
            raise ConfigError(f"--r must be positive for alternating sums, got {config.r}")
        if options.get("fit"):
            return self._fit(config)
        if config.n is not None:
            return self._value(config)
        return self._parity_forms(config)

    def _fit(self, config):
        if config.x != 0:
            raise ConfigError("--fit describes the sum at x = 0")
        if config.power < 1:
            raise ConfigError("--fit needs --power >= 1")
        fit = structure_fit(config.r, config.power)
        if config.fmt == "json":
            return dump_document(StructureFitSchema, structure_fit_document(fit))
        return render_structure_fit(fit, config.fmt)

    def _value(self, config):
        closed = alt_rfold_closed(config.r, config.power, config.x, config.n)
        direct = alt_bruteforce(config.r, config.power, config.x, config.n)
        document = {
            "r": config.r,
            "power": config.power,
            "x": str(config.x),
            "n": config.n,
            "closed_form": str(closed),
            "direct": str(direct),
            "agree": closed == direct,
        }
        if config.fmt == "json":
            return dump_document(AlternatingValueSchema, document)
        if config.fmt == "latex":
            return f"\\Sigma^{{{config.r}}}(-1)^{{n}}(n+x)^{{{config.power}}}\\big|_{{n={config.n}}} = {polynomial_latex(closed)}"
        return "\n".join(
            [
                f"closed form: {closed}",
                f"direct:      {direct}",
                f"agree:       {'yes' if closed == direct else 'NO'}",
            ]
        )

    def _parity_forms(self, config):
        forms = {parity: alt_rfold_closed_poly(config.r, config.power, config.x, parity) for parity in ("even", "odd")}
        if config.fmt == "json":
            document = {"r": config.r, "power": config.power, "x": str(config.x)}
            document.update({parity: coefficient_dict(poly) for parity, poly in forms.items()})
            return dump_document(ParityFormSchema, document)
        if config.fmt == "latex":
            lhs = f"\\Sigma^{{{config.r}}}(-1)^{{n}}(n+x)^{{{config.power}}}\\big|_{{x={config.x}}}"
            return " \\\\\n".join(
                f"{lhs} &= {polynomial_latex(poly)} \\quad (n\\ \\text{{{parity}}})" for parity, poly in forms.items()
            )
        lines = [f"sum^{config.r} (-1)^n (n+x)^{config.power} at x = {config.x}"]
        lines += [f"  [n {parity}] = {poly}" for parity, poly in forms.items()]
        return "\n".join(lines)
