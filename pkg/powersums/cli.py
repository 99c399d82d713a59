"""
Run configuration and the base class shared by the management commands.

Every subcommand is ``python manage.py <name>``. Options given on the
command line override the POWERSUMS_* settings, which in turn come from
the environment (see faulhaberLab/settings.py).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Tuple, Union

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from .exact_algebra import AlgebraError, to_rational
from .exceptions import ConfigError, PowerSumsError

logger = logging.getLogger(__name__)

FORMATS = ("text", "latex", "json")
SEED_LIMIT = 2 ** 64

EXIT_FAILURE = 1
EXIT_USAGE = 2


def parse_rational(text: Any) -> Fraction:
    """
    Parse an exact rational "p/q" (or an integer).

    Raises:
        ConfigError: not an exact rational

    Examples:
        >>> parse_rational("-3/2")
        Fraction(-3, 2)
    """
    if isinstance(text, str) and "." in text:
        raise ConfigError(f"Decimals are not exact rationals here, use p/q: {text!r}")
    try:
        return to_rational(text)
    except AlgebraError as e:
        raise ConfigError(str(e)) from e


def parse_x(text: Optional[str]) -> Optional[Fraction]:
    """None (symbolic x) for a missing value or "sym", else an exact rational."""
    if text is None or str(text).strip().lower() == "sym":
        return None
    return parse_rational(text)


def parse_x_grid(value: Union[str, Iterable[str]]) -> Tuple[Fraction, ...]:
    """
    Parse a comma-separated grid (or several) of rationals, keeping order and dropping repeats.

    Examples:
        >>> parse_x_grid("0,1/2,0")
        (Fraction(0, 1), Fraction(1, 2))
    """
    items = value.split(",") if isinstance(value, str) else [part for v in value for part in str(v).split(",")]
    grid = []
    for item in items:
        if not item.strip():
            continue
        x = parse_rational(item)
        if x not in grid:
            grid.append(x)
    if not grid:
        raise ConfigError("The x grid is empty")
    return tuple(grid)


def parse_decimal(text: Any, name: str) -> int:
    """An arbitrary-precision decimal integer."""
    if isinstance(text, int) and not isinstance(text, bool):
        return text
    text = str(text).strip().replace("_", "")
    if not text.lstrip("-").isdigit():
        raise ConfigError(f"--{name} must be a decimal integer, got {text!r}")
    return int(text)


def _setting(name: str, default: Any) -> Any:
    return getattr(settings, f"POWERSUMS_{name}", default)


@dataclass(frozen=True)
class RunConfig:
    """Validated options for one command invocation."""
    subcommand: str
    fmt: str = "text"
    max_m: int = 6
    max_r: int = 3
    max_n: int = 12
    xs: Tuple[Fraction, ...] = (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(-3, 2), Fraction(7, 3))
    seed: int = 20240229
    workers: int = 1
    y_order: int = 13
    t_order: int = 7
    naive_ceiling: int = 10 ** 7
    x: Optional[Fraction] = None
    m: Optional[int] = None
    r: Optional[int] = None
    power: Optional[int] = None
    n: Optional[int] = None
    self_test_negative: bool = field(default=False)

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise ConfigError(f"Unknown format {self.fmt!r}; choose from {', '.join(FORMATS)}")
        for name in ("max_m", "max_r", "max_n", "workers", "y_order", "t_order", "naive_ceiling"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise ConfigError(f"Seed must lie in [0, 2^64), got {self.seed}")
        if not self.xs:
            raise ConfigError("The x grid is empty")
        for name in ("m", "n"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"--{name} must be positive, got {value}")
        if self.r is not None and self.r < 0:
            raise ConfigError(f"--r must be nonnegative, got {self.r}")
        if self.power is not None and self.power < 0:
            raise ConfigError(f"--power must be nonnegative, got {self.power}")

    @classmethod
    def from_options(cls, subcommand: str, options: Mapping[str, Any], default_fmt: str = "text") -> "RunConfig":
        """Layer command-line options over the POWERSUMS_* settings."""

        def pick(key: str, setting: str, default: Any) -> Any:
            value = options.get(key)
            return _setting(setting, default) if value is None else value

        grid = options.get("xs") or _setting("X_GRID", "0,1,1/2,-3/2,7/3")
        power = options.get("power")
        return cls(
            subcommand=subcommand,
            fmt=options.get("fmt") or default_fmt,
            max_m=pick("max_m", "MAX_M", 6),
            max_r=pick("max_r", "MAX_R", 3),
            max_n=pick("max_n", "MAX_N", 12),
            xs=parse_x_grid(grid),
            seed=parse_decimal(pick("seed", "SEED", 20240229), "seed"),
            workers=pick("workers", "WORKERS", 1),
            y_order=pick("y_order", "Y_ORDER", 13),
            t_order=pick("t_order", "T_ORDER", 7),
            naive_ceiling=parse_decimal(pick("naive_ceiling", "NAIVE_CEILING", 10 ** 7), "naive-ceiling"),
            x=parse_x(options.get("x")),
            m=options.get("m"),
            r=options.get("r"),
            power=power if isinstance(power, int) else None,
            n=None if options.get("n") is None else parse_decimal(options["n"], "n"),
            self_test_negative=bool(options.get("self_test_negative")),
        )


def configure_verbosity(verbosity: int) -> None:
    if verbosity >= 2:
        logging.getLogger("powersums").setLevel(logging.DEBUG)


class PowerSumsCommand(BaseCommand):
    """
    Shared plumbing: a --format flag, RunConfig construction, and the
    translation of package errors into CommandError exit codes.
    """

    subcommand = ""
    default_format = "text"

    def add_arguments(self, parser):
        parser.add_argument("--format", "--emit", dest="fmt", choices=FORMATS, help=f"output format (default {self.default_format})")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run(self, config: RunConfig, options: Mapping[str, Any]) -> str:
        raise NotImplementedError

    def handle(self, *args, **options):
        configure_verbosity(options.get("verbosity", 1))
        try:
            config = RunConfig.from_options(self.subcommand, options, self.default_format)
            output = self.run(config, options)
        except ConfigError as e:
            logger.error(f"{self.subcommand}: invalid options: {e}")
            raise CommandError(str(e), returncode=EXIT_USAGE) from e
        except PowerSumsError as e:
            logger.error(f"{self.subcommand} failed: {e}")
            raise CommandError(str(e), returncode=EXIT_FAILURE) from e
        if output:
            self.stdout.write(output)
