"""
Run every identity and oracle check within the configured bounds and
print a JSON report; exit status 0 iff all checks pass.

    python manage.py verify --max-m 2 --workers 4
    python manage.py verify --self-test-negative
"""
from powersums.cli import PowerSumsCommand
from powersums.rendering import render_report, report_document
from powersums.schemas import ReportSchema, dump_document
from powersums.verification import VerificationFailedError, first_failure, run_checks, run_negative_self_test


class Command(PowerSumsCommand):
    help = "Verify every closed form and identity against its oracle"
    subcommand = "verify"
    default_format = "json"

    def add_command_arguments(self, parser):
        parser.add_argument("--max-m", type=int)
        parser.add_argument("--max-r", type=int)
        parser.add_argument("--max-n", type=int)
        parser.add_argument("--x", dest="xs", action="append", metavar="P/Q",
                            help="x value for the oracle grid (repeatable, or comma-separated)")
        parser.add_argument("--seed", help="seed for randomized parameters, 0 <= seed < 2^64")
        parser.add_argument("--workers", type=int)
        parser.add_argument("--y-order", type=int)
        parser.add_argument("--t-order", type=int)
        parser.add_argument("--self-test-negative", action="store_true",
                            help="flip the sign of one Bernoulli number; the sweep must fail")

    def run(self, config, options):
        results = run_negative_self_test(config) if config.self_test_negative else run_checks(config)
        if config.fmt == "json":
            self.stdout.write(dump_document(ReportSchema, report_document(results)))
        else:
            self.stdout.write(render_report(results, config.fmt))

        failure = first_failure(results)
        if failure is not None:
            raise VerificationFailedError(f"{failure.name} failed: {failure.to_dict()['counterexample']}")
        if config.self_test_negative:
            raise VerificationFailedError("Injected Bernoulli fault went undetected")
        return ""
