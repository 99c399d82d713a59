"""
Generating-function checks: coefficient extraction from truncated series
compared with the lambda-expansion coefficients, and the Euler
square-root and power identities.
"""
from powersums import series
from powersums.cli import PowerSumsCommand
from powersums.exceptions import ConfigError
from powersums.rendering import render_report, report_document
from powersums.schemas import ReportSchema, dump_document
from powersums.verification import VerificationFailedError

WHICH = ("faulhaber", "alternating", "euler-sqrt", "euler-power")


class Command(PowerSumsCommand):
    help = "Check generating-function identities coefficient by coefficient"
    subcommand = "gf"

    def add_command_arguments(self, parser):
        parser.add_argument("--which", choices=WHICH, default="faulhaber")
        parser.add_argument("--max-m", type=int)
        parser.add_argument("--max-k", type=int)
        parser.add_argument("--order", type=int, default=16, help="t-order for the Euler identities")
        parser.add_argument("--y-order", type=int)
        parser.add_argument("--t-order", type=int)

    def run(self, config, options):
        max_m = config.max_m
        max_k = options.get("max_k") or max_m
        if max_k < 1 or options["order"] < 1:
            raise ConfigError("--max-k and --order must be positive")
        y_order = max(config.y_order, 2 * max_m + 1)
        t_order = max(config.t_order, max_k + 1)

        which = options["which"]
        if which == "faulhaber":
            results = series.gf_faulhaber_check(max_m, max_k, y_order, t_order)
        elif which == "alternating":
            results = series.gf_alternating_check(max_m, max_k, y_order, t_order)
        elif which == "euler-sqrt":
            results = series.euler_sqrt_check(options["order"])
        else:
            results = series.euler_power_gf_check(max_k, options["order"])

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
