import math

import numpy as np
import pytest
from sklearn.base import clone

from conepareto import NaiveElimination, make_orthant, make_theta_cone


def _observations(means, L, seed=0):
    rng = np.random.default_rng(seed)
    X = np.vstack([m + 0.1 * rng.standard_normal((L, len(m))) for m in means])
    y = np.repeat([f"d{k}" for k in range(len(means))], L)
    return X, y


def test_params_and_clone():
    est = NaiveElimination(cone=make_orthant(2), tol=1e-6)
    assert est.get_params() == {"cone": est.cone, "tol": 1e-6}
    assert clone(est).tol == 1e-6
    est.set_params(tol=1e-3)
    assert est.tol == 1e-3


def test_fit_recovers_front():
    means = np.array([[0.0, 3.0], [3.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    X, y = _observations(means, 200)
    est = NaiveElimination().fit(X, y)
    assert list(est.pareto_set_) == ["d0", "d1", "d3"]
    np.testing.assert_array_equal(est.counts_, [200] * 4)
    assert est.n_features_in_ == 2
    np.testing.assert_allclose(est.means_, means, atol=0.05)


def test_wider_cone_prunes_more():
    means = np.array([[0.0, 3.0], [3.0, 0.0], [1.9, 1.9], [2.0, 2.0]])
    X, y = _observations(means, 200)
    narrow = NaiveElimination(make_theta_cone(math.pi / 4)).fit(X, y)
    wide = NaiveElimination(make_theta_cone(3 * math.pi / 4)).fit(X, y)
    assert set(wide.pareto_set_) <= set(narrow.pareto_set_)


def test_predict():
    X, y = _observations([[0.0, 3.0], [3.0, 0.0], [2.0, 2.0]], 100)
    est = NaiveElimination().fit(X, y)
    np.testing.assert_array_equal(est.predict([[1, 1], [4, 4], [0, 3.5]]), [0, 1, 1])
    with pytest.raises(ValueError):
        est.predict([[1, 2, 3]])


def test_gap_table():
    X, y = _observations([[0.0, 0.0], [1.0, 1.0]], 50)
    t = NaiveElimination().fit(X, y).gap_table()
    assert t.pareto_set == [1]
    assert t.delta_star[0] == pytest.approx(1.0, abs=0.1)


def test_validation():
    with pytest.raises(ValueError):
        NaiveElimination(make_orthant(3)).fit(np.zeros((4, 2)), [0, 0, 1, 1])
    with pytest.raises(ValueError):
        NaiveElimination().fit(np.array([[np.nan, 0.0]]), [0])
    with pytest.raises(Exception):
        NaiveElimination().predict([[0.0, 0.0]])
