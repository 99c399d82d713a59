from powersums.cli import PowerSumsCommand
from powersums.exceptions import ConfigError
from powersums.rendering import render_sequence, sequence_document
from powersums.schemas import SequenceSchema, dump_document
from powersums.special_sequences import sequence_table


class Command(PowerSumsCommand):
    help = "Print Bernoulli or Euler numbers and polynomials, or central factorial rows"
    subcommand = "seq"

    def add_command_arguments(self, parser):
        parser.add_argument("--kind", choices=("bernoulli", "euler", "central"), default="bernoulli")
        parser.add_argument("--max", dest="max_index", type=int, default=10)

    def run(self, config, options):
        max_index = options["max_index"]
        kind = options["kind"]
        if max_index < 0 or (kind == "central" and max_index < 1):
            raise ConfigError(f"--max out of range for {kind}: {max_index}")
        table = sequence_table(kind, max_index)
        if config.fmt == "json":
            return dump_document(SequenceSchema, sequence_document(kind, max_index, table))
        return render_sequence(kind, table, config.fmt)
