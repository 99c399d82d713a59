"""
Oracle-based choice between readings of an ambiguous formula.

Some closed forms admit more than one reading (a sign, an exponent, an
index shift). Each reading is registered as a named candidate with a
predicate that runs it against a brute-force oracle; exactly one must
pass. The outcome is cached per formula for the life of the process.
"""
import logging
import threading
from typing import Callable, Dict, Mapping

from .exceptions import VariantResolutionError

logger = logging.getLogger(__name__)

_resolved: Dict[str, str] = {}
_lock = threading.RLock()


def resolve_variant(formula: str, candidates: Mapping[str, Callable[[], bool]]) -> str:
    """
    Return the name of the unique candidate whose oracle predicate passes.

    Args:
        formula: cache key naming the formula being disambiguated
        candidates: candidate name -> zero-argument oracle predicate

    Raises:
        VariantResolutionError: no candidate passes, or more than one does

    Examples:
        >>> resolve_variant("demo-sign", {"plus": lambda: 1 + 1 == 2, "minus": lambda: 1 - 1 == 2})
        'plus'
    """
    with _lock:
        if formula in _resolved:
            return _resolved[formula]

        passing = []
        for name, oracle in candidates.items():
            ok = bool(oracle())
            logger.debug(f"Variant {formula}/{name}: {'pass' if ok else 'fail'}")
            if ok:
                passing.append(name)

        if len(passing) != 1:
            raise VariantResolutionError(
                f"{formula}: expected exactly one passing reading of {sorted(candidates)}, got {passing}"
            )

        _resolved[formula] = passing[0]
        logger.info(f"Resolved {formula} -> {passing[0]}")
        return passing[0]


def resolved_variants() -> Dict[str, str]:
    """Snapshot of every resolution made so far."""
    with _lock:
        return dict(_resolved)


def clear_resolved_variants() -> None:
    with _lock:
        _resolved.clear()
