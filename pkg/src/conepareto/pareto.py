"""Pareto sets under the order induced by a polyhedral cone."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cone import DEFAULT_TOL, _as_vector
from .exceptions import DataError, DimensionError


@dataclass(frozen=True)
class DesignSet:
    """``K`` mean vectors in ``R^D`` with one label per design."""

    means: np.ndarray
    labels: tuple

    def __post_init__(self):
        means = np.array(self.means, dtype=float)
        if means.ndim != 2 or means.shape[0] == 0:
            raise DataError(f"means must be a non-empty (K, D) array, got shape {means.shape}")
        if not np.all(np.isfinite(means)):
            raise DataError("means contain non-finite values")
        labels = tuple(self.labels) if self.labels is not None else tuple(range(means.shape[0]))
        if len(labels) != means.shape[0]:
            raise DataError(f"{len(labels)} labels for {means.shape[0]} designs")
        means.setflags(write=False)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_array(cls, means, labels=None):
        return cls(means, labels)

    @property
    def n_designs(self):
        return self.means.shape[0]

    @property
    def dim(self):
        return self.means.shape[1]


def _means_array(means):
    if isinstance(means, DesignSet):
        return means.means
    arr = np.asarray(means, dtype=float)
    if arr.ndim != 2:
        raise DimensionError(f"means must be a (K, D) array, got shape {arr.shape}")
    return arr


def dominates(cone, mu_i, mu_j, tol=DEFAULT_TOL):
    """True if design ``i`` is dominated by design ``j``: ``mu_j - mu_i`` in ``C \\ {0}``."""
    mu_i = _as_vector(mu_i, cone.dim, "mu_i")
    mu_j = _as_vector(mu_j, cone.dim, "mu_j")
    delta = mu_j - mu_i
    return bool(np.min(cone.W @ delta) >= -tol and np.linalg.norm(delta) > tol)


def dominance_matrix(means, cone, tol=DEFAULT_TOL):
    """Boolean ``(K, K)`` matrix whose ``[i, j]`` entry says ``i`` is dominated by ``j``."""
    mu = _means_array(means)
    if mu.shape[1] != cone.dim:
        raise DimensionError(f"means have dimension {mu.shape[1]}, cone has {cone.dim}")
    delta = mu[None, :, :] - mu[:, None, :]
    in_cone = np.min(delta @ cone.W.T, axis=2) >= -tol
    nonzero = np.linalg.norm(delta, axis=2) > tol
    return in_cone & nonzero


def pareto_mask(means, cone, tol=DEFAULT_TOL):
    return ~dominance_matrix(means, cone, tol).any(axis=1)


def pareto_set(means, cone, tol=DEFAULT_TOL):
    """Sorted indices of the designs not dominated by any other design."""
    return [int(i) for i in np.flatnonzero(pareto_mask(means, cone, tol))]
