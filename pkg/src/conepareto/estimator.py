"""scikit-learn style front end for naive elimination."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .cone import DEFAULT_TOL, make_orthant
from .gaps import build_gap_table
from .pareto import dominance_matrix, pareto_mask


class NaiveElimination(BaseEstimator):
    """Pareto set of empirical means under a cone order.

    ``fit`` takes raw noisy observations, one row per evaluation, together
    with the label of the evaluated design. It averages per design and
    keeps the designs that no other empirical mean dominates.

    Parameters
    ----------
    cone : PolyhedralCone, optional
        Ordering cone. Defaults to the nonnegative orthant of the data's
        dimension.
    tol : float
        Membership tolerance for dominance checks.

    Attributes
    ----------
    classes_ : ndarray of shape (K,)
        Design labels, sorted.
    means_ : ndarray of shape (K, D)
        Empirical mean of each design.
    counts_ : ndarray of shape (K,)
        Number of observations per design.
    pareto_mask_ : ndarray of shape (K,)
    pareto_set_ : ndarray
        Labels of the returned designs.
    """

    def __init__(self, cone=None, tol=DEFAULT_TOL):
        self.cone = cone
        self.tol = tol

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=float, y_numeric=False)
        classes, inverse, counts = np.unique(y, return_inverse=True, return_counts=True)
        sums = np.zeros((classes.size, X.shape[1]))
        np.add.at(sums, inverse, X)
        cone = self.cone if self.cone is not None else make_orthant(X.shape[1])
        if cone.dim != X.shape[1]:
            raise ValueError(f"X has {X.shape[1]} features, cone has dimension {cone.dim}")
        self.cone_ = cone
        self.classes_ = classes
        self.counts_ = counts
        self.means_ = sums / counts[:, None]
        self.pareto_mask_ = pareto_mask(self.means_, cone, self.tol)
        self.pareto_set_ = classes[self.pareto_mask_]
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        """1 for each row of ``X`` not dominated by any fitted Pareto mean, else 0."""
        check_is_fitted(self, "means_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        front = self.means_[self.pareto_mask_]
        stacked = np.vstack([X, front])
        dom = dominance_matrix(stacked, self.cone_, self.tol)[: X.shape[0], X.shape[0]:]
        return (~dom.any(axis=1)).astype(int)

    def gap_table(self):
        """Gap table of the fitted empirical means."""
        check_is_fitted(self, "means_")
        return build_gap_table(self.means_, self.cone_, self.tol)
