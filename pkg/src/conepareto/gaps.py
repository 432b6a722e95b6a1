"""Direction-free gaps between designs.

For a difference ``delta = mu_j - mu_i``:

* ``gap_m`` is the smallest step along a unit cone direction that lifts
  ``mu_i`` out of strong domination by ``mu_j``. It has the closed form
  ``min_n (w_n . delta)^+ / alpha_n``.
* ``gap_M`` is the smallest step along a unit cone direction that makes
  ``mu_j`` weakly dominate ``mu_i``. It equals the distance from ``delta``
  to the polyhedron ``C ∩ (delta + C) = {y : W y >= (W delta)^+}``.

At most one of the two is nonzero for any pair.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass

import numpy as np

from .cone import (
    DEFAULT_TOL,
    _as_vector,
    distance_to_cone,
    distance_to_interior_complement,
    distance_to_shifted_intersection,
)
from .pareto import _means_array, pareto_mask


class Dominance(enum.Enum):
    STRONG = "strong"
    BOUNDARY = "boundary"
    NONE = "none"


@dataclass(frozen=True)
class PairwiseGaps:
    m: float
    M: float
    theta: float
    classification: Dominance


def gap_m(cone, delta):
    delta = _as_vector(delta, cone.dim, "delta")
    return float(np.min(np.maximum(cone.W @ delta, 0.0) / cone.alphas))


def gap_M(cone, delta):
    delta = _as_vector(delta, cone.dim, "delta")
    return distance_to_shifted_intersection(cone, delta)


def _classify(m, M, tol):
    if m > tol and M <= tol:
        return Dominance.STRONG
    if M > tol and m <= tol:
        return Dominance.NONE
    return Dominance.BOUNDARY


def classify(cone, delta, tol=DEFAULT_TOL):
    """Which of strong / boundary / no dominance ``delta`` falls into."""
    return _classify(gap_m(cone, delta), gap_M(cone, delta), tol)


def _theta(cone, delta, m, M, cls, tol):
    if cls is Dominance.NONE and M > tol:
        return distance_to_cone(cone, delta) / M
    if cls is Dominance.STRONG and m > tol:
        return distance_to_interior_complement(cone, delta) / m
    return 1.0


def theta_constant(cone, delta, tol=DEFAULT_TOL):
    """Ratio of the unconstrained to the constrained distance for ``delta``.

    Outside the cone this is ``d(delta, C) / gap_M``; in the interior it is
    ``d(delta, complement of int C) / gap_m``; on the boundary it is 1.
    """
    delta = _as_vector(delta, cone.dim, "delta")
    m, M = gap_m(cone, delta), gap_M(cone, delta)
    return _theta(cone, delta, m, M, _classify(m, M, tol), tol)


def pairwise_gaps(cone, delta, tol=DEFAULT_TOL):
    delta = _as_vector(delta, cone.dim, "delta")
    m, M = gap_m(cone, delta), gap_M(cone, delta)
    cls = _classify(m, M, tol)
    return PairwiseGaps(m, M, _theta(cone, delta, m, M, cls, tol), cls)


@dataclass(frozen=True)
class GapTable:
    """All pairwise gaps of a design set under one cone.

    ``m[i, j]``, ``M[i, j]`` and ``theta[i, j]`` refer to ``delta = mu_j - mu_i``.
    The diagonal holds ``m = M = 0`` and ``theta = 1``.
    """

    m: np.ndarray
    M: np.ndarray
    theta: np.ndarray
    classes: np.ndarray
    delta_star: np.ndarray
    pareto_mask: np.ndarray

    @property
    def n_designs(self):
        return self.m.shape[0]

    @property
    def pareto_set(self):
        return [int(i) for i in np.flatnonzero(self.pareto_mask)]

    def pair(self, i, j):
        return PairwiseGaps(float(self.m[i, j]), float(self.M[i, j]),
                            float(self.theta[i, j]), self.classes[i, j])

    def write_pairwise_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["i", "j", "m", "M", "theta", "class"])
            K = self.n_designs
            for i in range(K):
                for j in range(K):
                    if i != j:
                        w.writerow([i, j, repr(float(self.m[i, j])), repr(float(self.M[i, j])),
                                    repr(float(self.theta[i, j])), self.classes[i, j].value])

    def write_design_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["i", "delta_star", "is_pareto"])
            for i in range(self.n_designs):
                w.writerow([i, repr(float(self.delta_star[i])), int(self.pareto_mask[i])])


def build_gap_table(means, cone, tol=DEFAULT_TOL):
    """Gap table for ``means`` (a :class:`DesignSet` or ``(K, D)`` array)."""
    mu = _means_array(means)
    K = mu.shape[0]
    m = np.zeros((K, K))
    M = np.zeros((K, K))
    theta = np.ones((K, K))
    classes = np.full((K, K), Dominance.BOUNDARY, dtype=object)
    for i in range(K):
        for j in range(K):
            if i == j:
                continue
            g = pairwise_gaps(cone, mu[j] - mu[i], tol)
            m[i, j], M[i, j], theta[i, j], classes[i, j] = g.m, g.M, g.theta, g.classification
    mask = pareto_mask(mu, cone, tol)
    delta_star = np.zeros(K)
    if mask.any():
        delta_star = m[:, mask].max(axis=1)
    delta_star[mask] = 0.0
    return GapTable(m, M, theta, classes, delta_star, mask)
