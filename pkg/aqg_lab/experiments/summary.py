"""
Run summaries computed from a record stream in a single pass.

The summary depends only on the records (plus the model parameters and grid
fundamental they were produced with), so it can be recomputed from
records.ndjson at any time.
"""

import logging
import math
from typing import Dict, Iterable, List, Mapping, Optional

from pydantic import BaseModel, Field

from aqg_lab.core.errors import SplittingError
from aqg_lab.dynamics import DissipationParams
from aqg_lab.splitting import fit_growth_rate, growth_estimate

logger = logging.getLogger(__name__)

EPSILONS = (1e-1, 1e-2, 1e-3)

# Relative slack of the pointwise high-frequency bound
HIGH_FREQ_RTOL = 1e-10

_DECAY_PREFIXES = ("lp.", "hs.", "hsdot.")


def eps_label(eps: float) -> str:
    return f"{eps:.0e}"


class BudgetCheck(BaseModel):
    worst_residual: float = 0.0
    worst_abs_residual: float = 0.0
    relative: float = 0.0
    tolerance: float
    passed: bool = True


class MaximumPrincipleCheck(BaseModel):
    worst_ratio: Dict[str, float] = Field(default_factory=dict)
    slack: float
    passed: bool = True


class MonotoneDecayCheck(BaseModel):
    """l2, linf and every lp nonincreasing between consecutive records, within slack."""

    slack: float
    failed: List[str] = Field(default_factory=list)
    passed: bool = True


class HighFrequencyCheck(BaseModel):
    evaluations: int = 0
    failures: int = 0
    worst_ratio: float = 0.0
    passed: bool = True


class SplitRate(BaseModel):
    rate: Optional[float] = None
    expected_rate: Optional[float] = None
    c_emp: Optional[float] = None
    growths: Dict[str, float] = Field(default_factory=dict)
    within_band: Optional[bool] = None
    note: Optional[str] = None


class SobolevBound(BaseModel):
    c_emp: float
    ratio_to_initial: Optional[float] = None


class RunSummary(BaseModel):
    record_count: int
    t_final: float
    initial: Dict[str, float]
    final: Dict[str, float]
    time_to_eps: Dict[str, Dict[str, Optional[float]]]
    monotone: Dict[str, bool]
    monotone_decay: MonotoneDecayCheck
    budget: BudgetCheck
    maximum_principle: MaximumPrincipleCheck
    high_frequency: Optional[HighFrequencyCheck] = None
    split_rate: Optional[SplitRate] = None
    hs_bound: Dict[str, SobolevBound] = Field(default_factory=dict)
    passed: bool


def _decay_key(key: str) -> bool:
    return key in ("l2", "linf") or key.startswith(_DECAY_PREFIXES)


def _lebesgue_key(key: str) -> bool:
    return key in ("l2", "linf") or key.startswith("lp.")


def _crossing_time(t0: float, v0: float, t1: float, v1: float, level: float) -> float:
    """First time the log-linear interpolant between two records reaches `level`."""
    if v0 > 0 and v1 > 0 and v0 > level and t1 > t0:
        fraction = (math.log(level) - math.log(v0)) / (math.log(v1) - math.log(v0))
        return t0 + min(max(fraction, 0.0), 1.0) * (t1 - t0)
    return t1


class SummaryAccumulator:
    """
    Fold flat records into a RunSummary without retaining them.

    Args:
        params (Optional[DissipationParams]): Enables the high-frequency and split-rate checks
        fundamental (Optional[float]): Grid fundamental wavenumber used to scale split cutoffs
        budget_tolerance (float): Accepted |budget residual| / ||theta0||^2
        max_principle_slack (float): Relative slack of the L^p maximum principle and of the
            record-to-record decay of linf and lp
    """

    def __init__(
        self,
        params: Optional[DissipationParams] = None,
        fundamental: Optional[float] = None,
        budget_tolerance: float = 1e-6,
        max_principle_slack: float = 1e-6,
    ):
        self.params = params
        self.fundamental = fundamental
        self.budget = BudgetCheck(tolerance=budget_tolerance)
        self.maximum_principle = MaximumPrincipleCheck(slack=max_principle_slack)
        self.monotone_decay = MonotoneDecayCheck(slack=max_principle_slack)
        self.high_frequency = HighFrequencyCheck() if params and fundamental else None
        self.count = 0
        self._initial: Dict[str, float] = {}
        self._previous: Dict[str, float] = {}
        self._crossings: Dict[str, Dict[str, Optional[float]]] = {}
        self._monotone: Dict[str, bool] = {}
        self._split_peak: Dict[str, float] = {}
        self._hs_peak: Dict[str, float] = {}

    def add(self, record: Mapping[str, float]) -> None:
        record = dict(record)
        if self.count == 0:
            self._initial = record
            for key, value in record.items():
                if _decay_key(key):
                    self._crossings[key] = {
                        eps_label(eps): (record["t"] if value == 0 else None) for eps in EPSILONS
                    }
        self._track_decay(record)
        self._track_monotone(record)
        self._track_budget(record)
        self._track_maximum_principle(record)
        self._track_high_frequency(record)
        for key, value in record.items():
            if key.startswith("split.") and key.endswith(".low"):
                self._split_peak[key] = max(self._split_peak.get(key, 0.0), value**2)
            elif key.startswith("hsbound."):
                self._hs_peak[key] = max(self._hs_peak.get(key, 0.0), value)
        self._previous = record
        self.count += 1

    def _track_decay(self, record: Dict[str, float]) -> None:
        for key, crossings in self._crossings.items():
            v0 = self._initial[key]
            value = record.get(key)
            if value is None:
                continue
            for eps in EPSILONS:
                label = eps_label(eps)
                level = eps * v0
                if crossings[label] is None and value <= level:
                    if self._previous:
                        crossings[label] = _crossing_time(
                            self._previous["t"], self._previous[key], record["t"], value, level
                        )
                    else:
                        crossings[label] = record["t"]

    def _track_monotone(self, record: Dict[str, float]) -> None:
        if not self._previous:
            return
        for key, value in record.items():
            prev = self._previous.get(key)
            if prev is None:
                continue
            if key == "l2" or key.startswith("hs."):
                ok = value < prev or (value == 0.0 and prev == 0.0)
            elif key == "linf" or key.startswith("lp."):
                ok = value <= prev * (1.0 + self.monotone_decay.slack)
            else:
                continue
            self._monotone[key] = self._monotone.get(key, True) and ok
            if not ok and _lebesgue_key(key) and key not in self.monotone_decay.failed:
                self.monotone_decay.failed.append(key)
                self.monotone_decay.passed = False

    def _track_budget(self, record: Dict[str, float]) -> None:
        residual = record.get("budget_residual")
        if residual is None:
            return
        if self.count == 0 or residual > self.budget.worst_residual:
            self.budget.worst_residual = residual
        self.budget.worst_abs_residual = max(self.budget.worst_abs_residual, abs(residual))
        scale = self._initial["l2"] ** 2
        self.budget.relative = self.budget.worst_abs_residual / scale if scale > 0 else 0.0
        self.budget.passed = (
            self.budget.worst_abs_residual <= self.budget.tolerance * scale
        )

    def _track_maximum_principle(self, record: Dict[str, float]) -> None:
        check = self.maximum_principle
        for key, value in record.items():
            if key != "linf" and not key.startswith("lp."):
                continue
            v0 = self._initial[key]
            ratio = value / v0 if v0 > 0 else (0.0 if value == 0 else math.inf)
            check.worst_ratio[key] = max(check.worst_ratio.get(key, 0.0), ratio)
            if value > v0 * (1.0 + check.slack):
                check.passed = False

    def _track_high_frequency(self, record: Dict[str, float]) -> None:
        check = self.high_frequency
        if check is None:
            return
        p = self.params
        for key, high in record.items():
            if not (key.startswith("split.") and key.endswith(".high")):
                continue
            delta = float(key[len("split.") : -len(".high")]) * self.fundamental
            lhs = high**2
            rhs = delta ** (-2.0 * p.alpha) * record["diss1"] + delta ** (-2.0 * p.beta) * record[
                "diss2"
            ]
            check.evaluations += 1
            if rhs > 0:
                check.worst_ratio = max(check.worst_ratio, lhs / rhs)
            if lhs > rhs * (1.0 + HIGH_FREQ_RTOL):
                check.failures += 1
                check.passed = False

    def _split_rate(self) -> Optional[SplitRate]:
        if self.params is None or self.fundamental is None or not self._split_peak:
            return None
        final = self._previous
        estimates = []
        for key, peak in self._split_peak.items():
            multiple = float(key[len("split.") : -len(".low")])
            estimates.append(
                growth_estimate(
                    multiple=multiple,
                    fundamental=self.fundamental,
                    initial=self._initial[key] ** 2,
                    peak=peak,
                    theta0_l2=self._initial["l2"],
                    cum_total=final["cum1"] + final["cum2"],
                    params=self.params,
                )
            )
        try:
            fit = fit_growth_rate(estimates, self.params)
        except SplittingError as e:
            return SplitRate(note=str(e))
        return SplitRate(
            rate=fit.rate,
            expected_rate=fit.expected_rate,
            c_emp=fit.c_emp,
            growths={f"{m:g}": g for m, g in fit.growths.items()},
            within_band=fit.within_band,
            note=None if fit.rate is not None else "growth vanishes; no rate fitted",
        )

    def finish(self) -> RunSummary:
        if self.count == 0:
            raise SplittingError("cannot summarize an empty record stream")
        hs_bound = {}
        for key, peak in self._hs_peak.items():
            initial = self._initial[key]
            hs_bound[key[len("hsbound.") :]] = SobolevBound(
                c_emp=peak, ratio_to_initial=peak / initial if initial > 0 else None
            )
        passed = self.budget.passed and self.maximum_principle.passed and self.monotone_decay.passed
        if self.high_frequency is not None:
            passed = passed and self.high_frequency.passed
        return RunSummary(
            record_count=self.count,
            t_final=self._previous["t"],
            initial={k: v for k, v in self._initial.items() if _decay_key(k)},
            final={k: v for k, v in self._previous.items() if _decay_key(k)},
            time_to_eps=self._crossings,
            monotone=self._monotone,
            monotone_decay=self.monotone_decay,
            budget=self.budget,
            maximum_principle=self.maximum_principle,
            high_frequency=self.high_frequency,
            split_rate=self._split_rate(),
            hs_bound=hs_bound,
            passed=passed,
        )


def summarize(
    records: Iterable[Mapping[str, float]],
    params: Optional[DissipationParams] = None,
    fundamental: Optional[float] = None,
    budget_tolerance: float = 1e-6,
    max_principle_slack: float = 1e-6,
) -> RunSummary:
    """
    Summarize a record stream (flat NDJSON dictionaries, first record at t = 0).

    Returns:
        RunSummary: Initial/final norms, time-to-eps, budget, maximum principle,
        high-frequency bound, split-rate fit and H^s bound constants
    """
    accumulator = SummaryAccumulator(params, fundamental, budget_tolerance, max_principle_slack)
    for record in records:
        accumulator.add(record)
    summary = accumulator.finish()
    logger.info(
        f"Summary of {summary.record_count} records: budget residual "
        f"{summary.budget.worst_residual:.3e}, maximum principle "
        f"{'held' if summary.maximum_principle.passed else 'VIOLATED'}"
    )
    return summary


def failed_checks(summary: RunSummary) -> List[str]:
    """Names of the asserted checks that did not pass."""
    failures = []
    if not summary.budget.passed:
        failures.append("energy budget")
    if not summary.maximum_principle.passed:
        failures.append("maximum principle")
    if not summary.monotone_decay.passed:
        failures.append("monotone decay")
    if summary.high_frequency is not None and not summary.high_frequency.passed:
        failures.append("high-frequency bound")
    return failures
