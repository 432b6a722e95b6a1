"""Success checks for a returned set and the summary metrics of a battery.

A returned set ``P`` succeeds at accuracy ``epsilon`` when

1. every Pareto-optimal design ``i`` is covered: some ``j`` in ``P`` has
   ``M(i, j) <= epsilon``, and
2. every returned non-Pareto design ``i`` has ``delta_star[i] <= epsilon``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .cone import DEFAULT_TOL
from .gaps import build_gap_table
from .pareto import _means_array


@dataclass(frozen=True)
class GroundTruth:
    """True means, cone and their gap table."""

    means: np.ndarray
    cone: object
    table: object

    @classmethod
    def build(cls, means, cone, tol=DEFAULT_TOL):
        mu = np.array(_means_array(means))
        return cls(mu, cone, build_gap_table(mu, cone, tol))

    @property
    def pareto_set(self):
        return self.table.pareto_set


@dataclass(frozen=True)
class SuccessReport:
    condition1_ok: bool
    condition2_ok: bool
    nf1: int
    nf2: int
    pm_percent: float

    @property
    def success(self):
        return self.condition1_ok and self.condition2_ok


def check_covering(P, truth, epsilon):
    """Return ``(ok, failing)`` for the covering condition.

    ``failing`` lists the Pareto-optimal designs with no ``j`` in ``P`` such
    that ``M(i, j) <= epsilon``.
    """
    P = sorted(set(int(j) for j in P))
    failing = []
    for i in truth.pareto_set:
        if i in P:
            continue
        if not P or truth.table.M[i, P].min() > epsilon:
            failing.append(i)
    return not failing, failing


def check_gap_bound(P, truth, epsilon):
    """Return ``(ok, failing)``: returned non-Pareto designs with ``delta_star > epsilon``."""
    mask = truth.table.pareto_mask
    failing = sorted(int(i) for i in set(P)
                     if not mask[i] and truth.table.delta_star[i] > epsilon)
    return not failing, failing


def evaluate_run(run, truth, epsilon):
    """Score one returned set (a :class:`RunResult` or an index collection)."""
    P = run.returned_set if hasattr(run, "returned_set") else run
    ok1, fail1 = check_covering(P, truth, epsilon)
    ok2, fail2 = check_gap_bound(P, truth, epsilon)
    pstar = set(truth.pareto_set)
    pm = 100.0 * len(pstar - set(P)) / len(pstar) if pstar else 0.0
    return SuccessReport(ok1, ok2, len(fail1), len(fail2), pm)


@dataclass(frozen=True)
class Summary:
    success_rate_percent: float
    nf1: float
    nf2: float
    pm: float
    n_runs: int


def aggregate(reports):
    reports = list(reports)
    if not reports:
        raise ValueError("cannot aggregate an empty list of reports")
    n = len(reports)
    return Summary(
        success_rate_percent=100.0 * sum(r.success for r in reports) / n,
        nf1=sum(r.nf1 for r in reports) / n,
        nf2=sum(r.nf2 for r in reports) / n,
        pm=sum(r.pm_percent for r in reports) / n,
        n_runs=n,
    )


@dataclass(frozen=True)
class GapStatistics:
    """Descriptive statistics of ``delta_star`` over non-Pareto designs.

    ``std`` is the sample standard deviation (divisor ``n - 1``) and is
    ``None`` when fewer than two designs are counted; all fields except
    ``count`` are ``None`` when every design is Pareto-optimal.
    """

    count: int
    mean: float | None
    std: float | None
    min: float | None
    max: float | None


def gap_statistics(table):
    values = table.delta_star[~table.pareto_mask]
    n = int(values.size)
    if n == 0:
        return GapStatistics(0, None, None, None, None)
    std = float(np.std(values, ddof=1)) if n > 1 else None
    return GapStatistics(n, float(values.mean()), std, float(values.min()), float(values.max()))


AGGREGATE_COLUMNS = ("cone", "L", "epsilon", "runs", "success_rate", "nf1", "nf2", "pm")


def _fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x:.6g}" if isinstance(x, float) else str(x)


def write_aggregate_csv(rows, path):
    """Write battery results; ``rows`` are dicts keyed by :data:`AGGREGATE_COLUMNS`."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(AGGREGATE_COLUMNS)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in AGGREGATE_COLUMNS])


def write_gap_statistics_csv(stats_by_cone, fh):
    """One row per statistic, one column per cone."""
    w = csv.writer(fh, lineterminator="\n")
    names = list(stats_by_cone)
    w.writerow(["statistic"] + names)
    for stat in ("count", "mean", "std", "min", "max"):
        w.writerow([stat] + [_fmt(getattr(stats_by_cone[n], stat)) for n in names])
