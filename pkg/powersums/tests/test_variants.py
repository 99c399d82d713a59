"""
Unit tests for oracle-based resolution of ambiguous formulas.
"""
import pytest

from powersums.alternating import resolve_correction_sign, resolve_odd_odd_prefactor, resolve_odd_recurrence_sign
from powersums.exceptions import VariantResolutionError
from powersums.faulhaber import resolve_alternating_exponent
from powersums.rfold import resolve_even_denominator
from powersums.variants import clear_resolved_variants, resolve_variant, resolved_variants


class TestResolveVariant:
    """Test choosing the unique passing reading."""

    def test_unique_reading(self):
        """Test the single passing candidate is returned and recorded."""
        assert resolve_variant("test-unique", {"plus": lambda: True, "minus": lambda: False}) == "plus"
        assert resolved_variants()["test-unique"] == "plus"

    def test_cached(self):
        """Test the oracle runs once per formula."""
        calls = []

        def oracle():
            calls.append(1)
            return True

        resolve_variant("test-cached", {"only": oracle})
        resolve_variant("test-cached", {"only": oracle})
        assert len(calls) == 1

    def test_no_reading_passes(self):
        """Test every candidate failing is an error."""
        with pytest.raises(VariantResolutionError, match="exactly one"):
            resolve_variant("test-none", {"a": lambda: False, "b": lambda: False})

    def test_ambiguous(self):
        """Test two passing candidates is an error."""
        with pytest.raises(VariantResolutionError):
            resolve_variant("test-both", {"a": lambda: True, "b": lambda: True})
        assert "test-both" not in resolved_variants()

    def test_clear(self):
        """Test clearing forgets every resolution."""
        resolve_variant("test-clear", {"a": lambda: True})
        clear_resolved_variants()
        assert "test-clear" not in resolved_variants()


class TestResolvedReadings:
    """Test the readings the package settles on."""

    def test_readings(self):
        """Test every ambiguous formula resolves to the reading that matches direct sums."""
        assert resolve_alternating_exponent() == "doubled"
        assert resolve_correction_sign() == "minus"
        assert resolve_odd_recurrence_sign() == "plain"
        assert resolve_odd_odd_prefactor() == "centered"
        assert resolve_even_denominator() == "printed"
        assert resolved_variants()["rfold-even-denominator"] == "printed"
