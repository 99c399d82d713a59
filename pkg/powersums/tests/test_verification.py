"""
Unit tests for the verification sweep.
"""
from fractions import Fraction

import pytest

from powersums.checks import passed
from powersums.cli import RunConfig
from powersums.exceptions import IdentityViolationError
from powersums.verification import (
    CheckTask,
    build_tasks,
    first_failure,
    run_checks,
    run_negative_self_test,
    sequence_tasks,
)


@pytest.fixture
def small_config():
    return RunConfig(
        subcommand="verify",
        max_m=2,
        max_r=1,
        max_n=6,
        xs=(Fraction(0), Fraction(1, 2), Fraction(-3, 2)),
        seed=7,
    )


class TestCheckTask:
    """Test single units of work."""

    def test_error_becomes_failure(self):
        """Test a package error is recorded as a failed check, not raised."""

        def boom():
            raise IdentityViolationError("broken")

        results = CheckTask(group="boom", run=boom, params={"n": 1}).execute()
        assert len(results) == 1
        assert not results[0].passed
        assert "IdentityViolationError: broken" in results[0].counterexample["error"]

    def test_list_results(self):
        """Test tasks may return several results."""
        results = CheckTask(group="many", run=lambda: [passed("a"), passed("b")]).execute()
        assert [r.name for r in results] == ["a", "b"]


class TestSweep:
    """Test the full sweep at small bounds."""

    def test_all_pass(self, small_config):
        """Test every check passes and there are plenty of them."""
        results = run_checks(small_config)
        assert len(results) >= 10
        assert first_failure(results) is None

    def test_sorted_by_name_then_params(self, small_config):
        """Test the report order is deterministic."""
        results = run_checks(small_config)
        names = [r.name for r in results]
        assert names == sorted(names)

    def test_seed_determines_tasks(self, small_config):
        """Test the same seed builds the same parameter list."""
        first = [t.params for t in build_tasks(small_config)]
        second = [t.params for t in build_tasks(small_config)]
        assert first == second

    def test_workers_do_not_change_results(self, small_config):
        """Test a thread pool gives the same report as a single worker."""
        tasks = sequence_tasks(small_config)
        single = [r.to_dict() for r in run_checks(small_config, tasks)]
        pooled_config = RunConfig(subcommand="verify", max_m=2, max_r=1, max_n=6, workers=4)
        pooled = [r.to_dict() for r in run_checks(pooled_config, tasks)]
        assert single == pooled


class TestNegativeSelfTest:
    """Test that a corrupted Bernoulli table is caught."""

    def test_fault_detected(self, small_config):
        """Test the sweep fails and names the Bernoulli difference identity first."""
        results = run_negative_self_test(small_config)
        failure = first_failure(results)
        assert failure is not None
        assert failure.name == "bernoulli_difference"
        assert failure.params == {"n": 3}

    def test_fault_is_contained(self, small_config):
        """Test a clean sweep after the self-test passes again."""
        run_negative_self_test(small_config)
        assert first_failure(run_checks(small_config, sequence_tasks(small_config))) is None
