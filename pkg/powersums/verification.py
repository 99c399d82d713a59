"""
The verification sweep: every identity and oracle check of the package,
enumerated within configured bounds and run as independent tasks.
"""
import json
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Sequence

from . import alternating, faulhaber, rfold, series, special_sequences
from .checks import CheckResult, failed, jsonable, passed
from .exceptions import PowerSumsError

logger = logging.getLogger(__name__)

FAULT_INDEX = 2


class VerificationFailedError(PowerSumsError):
    """At least one check in the sweep failed."""
    pass


@dataclass(frozen=True)
class CheckTask:
    """One unit of work: a named group, its parameters, and the thunk producing its results."""
    group: str
    run: Callable[[], Any]
    params: Dict[str, Any] = field(default_factory=dict)

    def execute(self) -> List[CheckResult]:
        start = time.perf_counter()
        try:
            outcome = self.run()
        except PowerSumsError as e:
            logger.warning(f"Check {self.group} {self.params} raised {type(e).__name__}: {e}")
            return [failed(self.group, {"error": f"{type(e).__name__}: {e}"}, **self.params)]
        results = outcome if isinstance(outcome, list) else [outcome]
        logger.debug(f"{self.group} {self.params}: {len(results)} results in {(time.perf_counter() - start) * 1000:.1f} ms")
        return results


def _task(group: str, run: Callable[[], Any], **params: Any) -> CheckTask:
    return CheckTask(group=group, run=run, params=params)


def _random_rationals(rng: random.Random, count: int) -> List[Fraction]:
    return [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(count)]


def sequence_tasks(config) -> List[CheckTask]:
    top = 2 * config.max_m + 2
    tasks = []
    for n in range(top + 1):
        tasks += [
            _task("bernoulli_difference", lambda n=n: special_sequences.bernoulli_difference_check(n), n=n),
            _task("bernoulli_reflection", lambda n=n: special_sequences.bernoulli_reflection_check(n), n=n),
            _task("bernoulli_derivative", lambda n=n: special_sequences.bernoulli_derivative_check(n), n=n),
            _task("bernoulli_addition", lambda n=n: special_sequences.bernoulli_addition_check(n), n=n),
            _task("euler_addition", lambda n=n: special_sequences.euler_addition_check(n), n=n),
            _task("euler_numbers", lambda n=n: special_sequences.euler_number_check(n), n=n),
        ]
    for n in range(config.max_m + 1):
        tasks.append(_task("bernoulli_half", lambda n=n: special_sequences.bernoulli_half_check(n), n=n))
    for m in range(1, 2 * config.max_m + 1):
        tasks.append(_task("central_factorial", lambda m=m: special_sequences.central_factorial_check(m), m=m))
    for m in range(1, config.max_m + 1):
        tasks.append(_task("odd_power_factorial", lambda m=m: special_sequences.odd_power_factorial_check(m), m=m))
    return tasks


def faulhaber_tasks(config, rng: random.Random) -> List[CheckTask]:
    xs, max_n = config.xs, config.max_n
    tasks = []
    for m in range(1, config.max_m + 1):
        tasks += [
            _task("faulhaber_reconstruction", lambda m=m: faulhaber.faulhaber_reconstruction_check(m), m=m),
            _task("faulhaber_oracle", lambda m=m: faulhaber.faulhaber_oracle_check(m, xs, max_n), m=m),
            _task("gessel_viennot", lambda m=m: faulhaber.gessel_viennot_check(m), m=m),
            _task("alternating_oracle", lambda m=m: faulhaber.alternating_oracle_check(m, xs, max_n), m=m),
        ]

    progressions = [(Fraction(-1), Fraction(2)), (Fraction(-2), Fraction(3)), (Fraction(0), Fraction(1))]
    progressions += [(a, b) for a, b in zip(_random_rationals(rng, 2), _random_rationals(rng, 2)) if b != 0]
    for a, b in progressions:
        for m in range(1, config.max_m + 1):
            tasks.append(
                _task("progression", lambda a=a, b=b, m=m: faulhaber.progression_check(a, b, m, max_n), a=a, b=b, m=m)
            )

    points = list(xs) + _random_rationals(rng, 2)
    for x in points:
        for i in range(1, config.max_m + 1):
            tasks.append(
                _task("lambda_decomposition", lambda x=x, i=i: faulhaber.decomposition_check(x, max_n, i), x=x, i=i)
            )
    return tasks


def series_tasks(config) -> List[CheckTask]:
    max_m = config.max_m
    y_order = max(config.y_order, 2 * max_m + 1)
    t_order = max(config.t_order, max_m + 1)
    return [
        _task(
            "gf_faulhaber",
            lambda: series.gf_faulhaber_check(max_m, max_m, y_order, t_order),
            max_m=max_m,
            y_order=y_order,
            t_order=t_order,
        ),
        _task(
            "gf_alternating",
            lambda: series.gf_alternating_check(max_m, max_m, y_order, t_order),
            max_m=max_m,
            y_order=y_order,
            t_order=t_order,
        ),
        _task("euler_gf_sqrt", lambda: series.euler_sqrt_check(16), order=16),
        _task(
            "euler_power_gf",
            lambda: series.euler_power_gf_check(config.max_r + 3, 2 * max_m + 2),
            k_max=config.max_r + 3,
            order=2 * max_m + 2,
        ),
    ]


def rfold_tasks(config) -> List[CheckTask]:
    xs, max_n = config.xs, config.max_n
    folds = range(1, config.max_r + 3)
    tasks = []
    for r in folds:
        for l in range(config.max_m + 1):
            tasks.append(_task("rfold_falling", lambda r=r, l=l: _form_checks(rfold.rfold_falling(r, l), xs, max_n), folds=r, l=l))
        for power in range(1, 2 * config.max_m + 1):
            if (r - power) % 2:
                continue
            tasks.append(
                _task(
                    "rfold_power",
                    lambda r=r, power=power: _form_checks(rfold.rfold_closed_form(r, power), xs, max_n),
                    folds=r,
                    power=power,
                )
            )
        for power in range(1, config.max_m + 1):
            if (r - power) % 2:
                tasks.append(
                    _task("rfold_fit", lambda r=r, power=power: _fit_check(r, power, xs, max_n), folds=r, power=power)
                )
    for kind in ("odd", "even"):
        for r in range(config.max_r + 1):
            for k in range(1, config.max_m + 1):
                tasks.append(_task("polynomiality", lambda kind=kind, r=r, k=k: rfold.polynomiality_check(kind, r, k), kind=kind, r=r, k=k))
    tasks += [
        _task("telescoping", lambda: rfold.telescoping_suite(2 * config.max_m, 2 * max_n), max_l=2 * config.max_m),
        _task("half_split", lambda: rfold.half_split_suite(config.max_m + config.max_r), max_k=config.max_m + config.max_r),
    ]
    return tasks


def _form_checks(form, xs: Sequence[Fraction], max_n: int) -> List[CheckResult]:
    return [rfold.rfold_oracle_check(form, xs, max_n), rfold.correction_check(form)]


def _fit_check(r: int, power: int, xs: Sequence[Fraction], max_n: int) -> CheckResult:
    """Interpolated mixed-parity sums reproduce the brute force beyond their sample window."""
    for x in xs:
        poly = rfold.rfold_fit(r, power, x)
        window = power + r + 3 + max_n
        brute = rfold.rfold_bruteforce_values(r, lambda i: (x + i) ** power, window)
        for n in range(1, window + 1):
            if poly.specialize({"n": n}) != brute[n - 1]:
                return failed("rfold_fit", {"x": x, "n": n}, folds=r, power=power)
    return passed("rfold_fit", folds=r, power=power)


def alternating_tasks(config) -> List[CheckTask]:
    xs, max_n = config.xs, config.max_n
    tasks = [_task("alternating_identities", alternating.identity_checks)]
    for r in range(1, config.max_r + 2):
        for m in range(config.max_m + 1):
            tasks.append(
                _task("alternating_rfold_closed", lambda r=r, m=m: alternating.lemma_oracle_check(r, m, xs, max_n), r=r, m=m)
            )
    for k in range(1, config.max_r + 4):
        for m in range(config.max_m + 1):
            for parity in ("even", "odd"):
                tasks.append(
                    _task(
                        "euler_special_value",
                        lambda k=k, m=m, parity=parity: alternating.recurrence_check(k, m, parity),
                        k=k,
                        m=m,
                        parity=parity,
                    )
                )
    for fold in range(1, 2 * config.max_r + 2):
        for power in range(1, 2 * config.max_m):
            tasks.append(
                _task("structure_fit", lambda fold=fold, power=power: alternating.structure_check(fold, power), fold=fold, power=power)
            )
    return tasks


def build_tasks(config) -> List[CheckTask]:
    """Every check within the configured bounds; randomized parameters come from ``config.seed``."""
    rng = random.Random(config.seed)
    return (
        sequence_tasks(config)
        + faulhaber_tasks(config, rng)
        + series_tasks(config)
        + rfold_tasks(config)
        + alternating_tasks(config)
    )


def _sort_key(result: CheckResult):
    return result.name, json.dumps(jsonable(result.params), sort_keys=True)


def run_checks(config, tasks: Sequence[CheckTask] = None) -> List[CheckResult]:
    """
    Run the tasks on ``config.workers`` threads and return every result in a
    deterministic order (by name, then parameters).
    """
    tasks = build_tasks(config) if tasks is None else tasks
    start = time.perf_counter()
    if config.workers == 1:
        batches = [task.execute() for task in tasks]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            batches = list(pool.map(CheckTask.execute, tasks))
    results = sorted((result for batch in batches for result in batch), key=_sort_key)
    failures = sum(1 for result in results if not result.passed)
    logger.info(
        f"Verification finished: {len(results)} checks, {failures} failed, "
        f"{(time.perf_counter() - start):.2f} s on {config.workers} worker(s)"
    )
    return results


def run_negative_self_test(config) -> List[CheckResult]:
    """Run the sweep with the sign of one Bernoulli number flipped; it must fail."""
    with special_sequences.bernoulli_fault(FAULT_INDEX):
        return run_checks(config)


def first_failure(results: Sequence[CheckResult]):
    return next((result for result in results if not result.passed), None)
