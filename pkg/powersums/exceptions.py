"""
Exception hierarchy shared across the power-sum modules.

Module-specific errors live next to their code and derive from these.
"""


class PowerSumsError(Exception):
    """Base exception for every error raised by this package."""
    pass


class IdentityViolationError(PowerSumsError):
    """A closed form or identity disagrees with its independent oracle."""
    pass


class StructureViolationError(PowerSumsError):
    """A structure fit exceeded a degree bound or left a nonzero remainder."""
    pass


class VariantResolutionError(PowerSumsError):
    """No candidate reading of a formula, or more than one, passed its oracle."""
    pass


class ConfigError(PowerSumsError):
    """Invalid run configuration (CLI flags or settings)."""
    pass
