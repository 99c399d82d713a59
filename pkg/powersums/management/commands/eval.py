"""
Evaluate sum^r i^power at a large n through its closed form, optionally
against naive summation.

    python manage.py eval --power 21 --n 100000 --naive
"""
from powersums.cli import PowerSumsCommand
from powersums.evaluation import evaluate_sum
from powersums.exceptions import ConfigError
from powersums.schemas import EvalSchema, dump_document


class Command(PowerSumsCommand):
    help = "Evaluate a power sum in closed form (and naively) with timings"
    subcommand = "eval"

    def add_command_arguments(self, parser):
        parser.add_argument("--power", type=int, required=True)
        parser.add_argument("--r", type=int, default=1, help="number of folds (default 1)")
        parser.add_argument("--n", required=True, help="decimal integer, any size")
        parser.add_argument("--naive", action="store_true", help="also sum term by term and compare")
        parser.add_argument("--naive-ceiling", help="largest n accepted for --naive")

    def run(self, config, options):
        if config.n is None:
            raise ConfigError("--n is required")
        if config.r < 1:
            raise ConfigError(f"--r must be positive, got {config.r}")
        report = evaluate_sum(config.power, config.n, r=config.r, naive=options.get("naive", False),
                              ceiling=config.naive_ceiling)
        if config.fmt == "json":
            return dump_document(EvalSchema, report.to_dict())
        if config.fmt == "latex":
            lhs = f"\\sum_{{i=1}}^{{{report.n}}} i^{{{report.power}}}" if report.r == 1 else (
                f"\\Sigma^{{{report.r}}} n^{{{report.power}}}\\big|_{{n={report.n}}}"
            )
            return f"{lhs} = {report.closed_form}"
        lines = [f"closed form ({report.route}): {report.closed_form}  [{report.closed_form_ms:.3f} ms]"]
        if report.naive is not None:
            lines.append(f"naive: {report.naive}  [{report.naive_ms:.3f} ms]")
            lines.append(f"agree: {'yes' if report.agree else 'NO'}")
        return "\n".join(lines)
