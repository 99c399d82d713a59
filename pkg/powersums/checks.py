"""
Check results shared by the identity and oracle suites.

A failing identity is data, not an exception: every check returns a
``CheckResult`` and the verify command decides what a failure means.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional

from .exact_algebra import Polynomial


def jsonable(value: Any) -> Any:
    """Convert rationals and polynomials into JSON-safe values."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Polynomial):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity or oracle check."""
    name: str
    params: Dict[str, Any] = field(default_factory=dict)
    passed: bool = True
    counterexample: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "params": jsonable(self.params),
            "pass": self.passed,
            "counterexample": jsonable(self.counterexample) if self.counterexample is not None else None,
        }


def passed(name: str, **params: Any) -> CheckResult:
    return CheckResult(name=name, params=params, passed=True)


def failed(name: str, counterexample: Dict[str, Any], **params: Any) -> CheckResult:
    return CheckResult(name=name, params=params, passed=False, counterexample=counterexample)


def compare(name: str, expected: Any, actual: Any, **params: Any) -> CheckResult:
    """Pass when ``expected == actual`` exactly; otherwise record both sides."""
    if expected == actual:
        return passed(name, **params)
    return failed(name, {"expected": expected, "actual": actual}, **params)
