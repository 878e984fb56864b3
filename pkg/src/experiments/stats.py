"""
Summary statistics over experiment records: mean, sample standard deviation,
normal-approximation 95% confidence intervals and least-squares trends.
"""

import math
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from scipy import stats

from ..models import AggregateStats, ExperimentRecord, Regression, SolveStatus, TrendReport
from ..utils.errors import RegressionUndefined

Z_95 = 1.96


def _spread(values: np.ndarray) -> tuple[float, float, float]:
    n = len(values)
    mean = float(np.mean(values))
    std = float(np.std(values, ddof=1)) if n > 1 else 0.0
    return mean, std, Z_95 * std / math.sqrt(n)


def _regress(x: Sequence[float], y: Sequence[float], x_label: str, y_label: str) -> Regression:
    if len(set(x)) < 2:
        raise RegressionUndefined(f"{y_label} on {x_label} needs at least two distinct {x_label} values")
    fit = stats.linregress(x, y)
    return Regression(x_label=x_label, y_label=y_label, alpha=float(fit.slope),
                      beta=float(fit.intercept), r_value=float(fit.rvalue))


def aggregate(records: Sequence[ExperimentRecord], swept: Optional[str] = None) -> AggregateStats:
    """
    Mean, std (n-1) and 95% CI half-width of active nodes and solve time.

    Active nodes are summarized over placed records only; INFEASIBLE runs and
    TIMEOUTs without an incumbent are counted in `excluded` and still enter the
    time figures. With `swept`, also regress solve time on the swept value and,
    over placed records, on the active node count (left empty when it does not
    vary).

    Raises:
        ValueError: on an empty record list.
        RegressionUndefined: if `swept` takes a single value.
    """
    if not records:
        raise ValueError("aggregate needs at least one record")

    placed = [r for r in records if r.placed]
    active = np.array([r.active_nodes for r in placed], dtype=float)
    times = np.array([r.solve_time_s for r in records], dtype=float)
    mean = std = ci = None
    if placed:
        mean, std, ci = _spread(active)
    time_mean, time_std, time_ci = _spread(times)

    regression = regression_on_active = None
    if swept is not None:
        regression = _regress([r.swept_value(swept) for r in records], times, swept, "solve_time_s")
        try:
            regression_on_active = _regress(active.tolist(), [r.solve_time_s for r in placed],
                                            "active_nodes", "solve_time_s")
        except RegressionUndefined:
            pass

    return AggregateStats(
        n=len(records),
        excluded=len(records) - len(placed),
        mean=mean,
        std=std,
        ci=ci,
        time_mean=time_mean,
        time_std=time_std,
        time_ci=time_ci,
        regression=regression,
        regression_on_active=regression_on_active,
    )


def series_table(records: Sequence[ExperimentRecord], swept: str) -> pd.DataFrame:
    """Plot-ready table, one row per (preset, x); `mean` and `ci` are NaN when nothing was placed."""
    groups: dict[tuple[str, int], list[ExperimentRecord]] = {}
    for record in records:
        groups.setdefault((record.preset, record.swept_value(swept)), []).append(record)

    rows = []
    for (preset, x), group in sorted(groups.items()):
        summary = aggregate(group)
        rows.append({
            "preset": preset,
            "x": x,
            "n": summary.n,
            "excluded": summary.excluded,
            "mean": math.nan if summary.mean is None else summary.mean,
            "ci": math.nan if summary.ci is None else summary.ci,
            "time_mean": summary.time_mean,
            "time_ci": summary.time_ci,
        })
    return pd.DataFrame(rows, columns=["preset", "x", "n", "excluded", "mean", "ci", "time_mean", "time_ci"])


def trend_report(records: Sequence[ExperimentRecord], swept: str) -> TrendReport:
    """
    Banded trend quantities of a sweep: Spearman correlation of mean active
    nodes (placed records only) against x, log-log slope of median solve
    time, TIMEOUT and INFEASIBLE rates.
    """
    frame = pd.DataFrame({
        "x": [r.swept_value(swept) for r in records],
        "active": [r.active_nodes for r in records],
        "time": [r.solve_time_s for r in records],
        "status": [r.status for r in records],
        "placed": [r.placed for r in records],
    })
    placed = frame[frame["placed"]]
    means = placed.groupby("x")["active"].mean()
    medians = frame.groupby("x")["time"].median()

    spearman = None
    if len(means) >= 2 and means.nunique() > 1:
        spearman = float(stats.spearmanr(means.index, means.values)[0])

    slope = None
    positive = medians[(medians > 0) & (medians.index > 0)]
    if len(positive) >= 2:
        slope = float(stats.linregress(np.log(positive.index.to_numpy(dtype=float)),
                                       np.log(positive.to_numpy(dtype=float))).slope)

    total = max(len(frame), 1)
    return TrendReport(
        swept=swept,
        points=int(frame["x"].nunique()),
        spearman_active=spearman,
        loglog_time_slope=slope,
        timeout_rate=float((frame["status"] == SolveStatus.TIMEOUT.value).sum() / total),
        infeasible_rate=float((frame["status"] == SolveStatus.INFEASIBLE.value).sum() / total),
    )
