"""
Emit a lambda-expansion (odd powers or alternating even powers), or the
mu-polynomial of an odd power sum over an arithmetic progression.

    python manage.py formula --power odd --m 3 --x sym --format latex
    python manage.py formula --power odd --m 2 --progression -1,2
"""
from powersums.cli import PowerSumsCommand, parse_rational
from powersums.exceptions import ConfigError
from powersums.faulhaber import ProgressionSpec, alternating_coeffs, faulhaber_coeffs, progression_power_sum
from powersums.rendering import (
    expansion_document,
    progression_document,
    render_expansion,
    render_progression,
)
from powersums.schemas import ExpansionSchema, dump_document


class Command(PowerSumsCommand):
    help = "Print the lambda-expansion of an odd or alternating even power sum"
    subcommand = "formula"

    def add_command_arguments(self, parser):
        parser.add_argument("--power", choices=("odd", "alt"), default="odd",
                            help="odd: sum (x+i)^(2m-1); alt: sum (-1)^(n-i) (x+i)^(2m)")
        parser.add_argument("--alt-power", dest="power", action="store_const", const="alt",
                            help="same as --power alt")
        parser.add_argument("--m", type=int, required=True)
        parser.add_argument("--x", default="sym", help="'sym' or an exact rational p/q")
        parser.add_argument("--progression", metavar="A,B",
                            help="sum over a+b, ..., a+nb as a polynomial in mu (odd powers only)")

    def run(self, config, options):
        if options.get("progression"):
            return self._progression(config, options)

        expansion = faulhaber_coeffs(config.m) if options["power"] == "odd" else alternating_coeffs(config.m)
        if config.fmt == "json":
            return dump_document(ExpansionSchema, expansion_document(expansion, config.x))
        return render_expansion(expansion, config.fmt, config.x)

    def _progression(self, config, options):
        if options["power"] != "odd":
            raise ConfigError("--progression applies to odd power sums only")
        parts = options["progression"].split(",")
        if len(parts) != 2:
            raise ConfigError(f"--progression expects A,B, got {options['progression']!r}")
        spec = ProgressionSpec(parse_rational(parts[0]), parse_rational(parts[1]))
        poly = progression_power_sum(spec, config.m)
        if config.fmt == "json":
            return dump_document(ExpansionSchema, progression_document(spec, config.m, poly))
        return render_progression(spec, config.m, poly, config.fmt)
