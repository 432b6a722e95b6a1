import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conepareto.bandit import (
    DEFAULT_C,
    ExperimentConfig,
    NoiseModel,
    design_streams,
    empirical_gaps,
    naive_elimination,
    sample_budget,
    split_delta,
    theorem_budget,
)
from conepareto.cone import make_orthant, make_theta_cone
from conepareto.exceptions import ConfigError
from conepareto.gaps import build_gap_table, gap_m
from conepareto.pareto import pareto_set


class TestBudget:
    def test_reference_value(self):
        assert 400 * math.log(800) == pytest.approx(2673.8, abs=0.05)
        assert sample_budget(0.1, 0.01, 1, 1, 1, 2) == 2674

    def test_noiseless_floor(self):
        assert sample_budget(0.1, 0.01, sigma=0) == 1

    def test_calibrated_magnitude(self):
        assert 2.41 <= DEFAULT_C <= 2.42
        assert split_delta(0.01, 206) == pytest.approx(4.736e-7, rel=1e-3)
        assert theorem_budget(0.1, 0.01, 206) == pytest.approx(38.8e3, rel=0.02)

    def test_two_designs(self):
        assert theorem_budget(0.2, 0.05, 2, c=1.5) == sample_budget(0.2, 0.05, c=1.5)

    def test_monotone_in_K(self):
        assert theorem_budget(0.1, 0.01, 100) <= theorem_budget(0.1, 0.01, 200)

    @pytest.mark.parametrize("kw", [dict(epsilon=0), dict(delta=0), dict(delta=1),
                                    dict(beta=0.9), dict(c=0), dict(sigma=-1), dict(D=0)])
    def test_invalid(self, kw):
        args = dict(epsilon=0.1, delta=0.1, beta=1, c=1, sigma=1, D=2) | kw
        with pytest.raises(ValueError):
            sample_budget(**args)

    def test_invalid_K(self):
        with pytest.raises(ValueError):
            theorem_budget(0.1, 0.1, 1)


@settings(max_examples=200, deadline=None)
@given(eps=st.floats(0.01, 1), delta=st.floats(0.001, 0.5), beta=st.floats(1, 3),
       c=st.floats(0.5, 3), sigma=st.floats(0.1, 3), D=st.integers(1, 5),
       f=st.floats(1.01, 2))
def test_budget_monotonicity(eps, delta, beta, c, sigma, D, f):
    base = sample_budget(eps, delta, beta, c, sigma, D)
    assert sample_budget(eps * f, delta, beta, c, sigma, D) <= base
    assert sample_budget(eps, min(delta * f, 0.99), beta, c, sigma, D) <= base
    assert sample_budget(eps, delta, beta * f, c, sigma, D) >= base
    assert sample_budget(eps, delta, beta, c * f, sigma, D) >= base
    assert sample_budget(eps, delta, beta, c, sigma * f, D) >= base
    assert sample_budget(eps, delta, beta, c, sigma, D + 1) >= base


class TestNaiveElimination:
    def test_noiseless(self):
        rng = np.random.default_rng(0)
        mu = rng.standard_normal((10, 2))
        c = make_theta_cone(1.0)
        run = naive_elimination(mu, c, 5, NoiseModel(scale=0.0))
        assert run.returned_set == pareto_set(mu, c)
        np.testing.assert_array_equal(run.empirical_means, mu)
        assert run.total_samples == 50

    def test_deterministic(self):
        mu = [[0, 0], [1, 1], [2, -1]]
        a = naive_elimination(mu, make_orthant(2), 100, rngs=7, run_index=3)
        b = naive_elimination(mu, make_orthant(2), 100, rngs=7, run_index=3)
        assert a.to_json() == b.to_json()
        c = naive_elimination(mu, make_orthant(2), 100, rngs=7, run_index=4)
        assert a.to_json() != c.to_json()

    def test_chain_identified(self):
        mu = [[0, 0], [1, 1]]
        hits = sum(naive_elimination(mu, make_orthant(2), 10_000, rngs=11, run_index=r)
                   .returned_set == [1] for r in range(100))
        assert hits >= 95

    def test_noise_centering(self):
        mu = np.array([[0.0, 0.0], [3.0, -1.0], [1.0, 5.0]])
        L = 100_000
        for noise in (NoiseModel("gaussian", 1.0), NoiseModel("uniform", 2.0)):
            run = naive_elimination(mu, make_orthant(2), L, noise, rngs=5)
            err = np.linalg.norm(run.empirical_means - mu, axis=1)
            assert np.all(err <= 5 * noise.scale * math.sqrt(2 / L))

    def test_prefix_sharing_across_budgets(self):
        # common random numbers: design streams only depend on (seed, run, design)
        s1 = design_streams(3, 2, 4)
        s2 = design_streams(3, 2, 4)
        assert all(a.standard_normal() == b.standard_normal() for a, b in zip(s1, s2))

    def test_explicit_streams(self):
        streams = [np.random.default_rng(k) for k in range(2)]
        run = naive_elimination([[0, 0], [1, 1]], make_orthant(2), 10, rngs=streams)
        assert run.empirical_means.shape == (2, 2)
        with pytest.raises(ValueError):
            naive_elimination([[0, 0], [1, 1]], make_orthant(2), 10, rngs=streams[:1])
        with pytest.raises(ValueError):
            naive_elimination([[0, 0]], make_orthant(2), 0)

    def test_json_record(self):
        run = naive_elimination([[0, 0], [1, 1]], make_orthant(2), 3, rngs=1, run_index=9)
        rec = json.loads(run.to_json())
        assert rec["run"] == 9 and rec["L"] == 3 and rec["total_samples"] == 6
        assert rec["returned_set"] == run.returned_set


def test_noise_model_validation():
    with pytest.raises(ConfigError):
        NoiseModel("cauchy")
    with pytest.raises(ConfigError):
        NoiseModel("gaussian", -1)
    assert NoiseModel("gaussian", 2.0).norm_subgaussian_sigma(4) == pytest.approx(4.0)


class TestEmpiricalGaps:
    def test_noiseless_equals_truth(self):
        mu = np.random.default_rng(1).standard_normal((6, 2))
        c = make_theta_cone(2.0)
        run = naive_elimination(mu, c, 1, NoiseModel(scale=0))
        a, b = empirical_gaps(run, c), build_gap_table(mu, c)
        np.testing.assert_array_equal(a.m, b.m)
        np.testing.assert_array_equal(a.M, b.M)

    def test_complementarity_and_closed_form(self):
        c = make_theta_cone(math.pi / 3)
        run = naive_elimination([[0, 0], [0.3, 0.2]], c, 50, rngs=2)
        t = empirical_gaps(run, c)
        assert np.all(np.minimum(t.m, t.M) <= 1e-8)
        d = run.empirical_means[1] - run.empirical_means[0]
        expected = np.min(np.maximum(c.W @ d, 0) / c.alphas)
        assert t.m[0, 1] == pytest.approx(expected, rel=1e-12, abs=0)
        assert t.m[0, 1] == gap_m(c, d)


class TestConfig:
    def test_defaults_and_from_dict(self):
        cfg = ExperimentConfig.from_dict({"epsilon": [0.1, 0.01], "L": [100, 1000], "runs": 5})
        assert cfg.epsilon == (0.1, 0.01) and cfg.L == (100, 1000)
        assert cfg.noise == NoiseModel("gaussian", 1.0)
        assert cfg.budgets(0.1, 20, 1.0, 2) == (100, 1000)

    def test_auto_budget(self):
        cfg = ExperimentConfig(epsilon=0.1, delta=0.01)
        assert cfg.budgets(0.1, 206, 1.0, 2) == (theorem_budget(0.1, 0.01, 206),)

    @pytest.mark.parametrize("bad", [{"epsilon": 0}, {"delta": 1.5}, {"L": [0]}, {"L": "x"},
                                     {"c": -1}, {"sigma": -0.1}, {"runs": 0}, {"seed": -1},
                                     {"noise_kind": "laplace"}, {"bogus": 1}])
    def test_invalid(self, bad):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict(bad)

    def test_from_json(self, tmp_path):
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps({"epsilon": 0.2, "runs": 3, "seed": 9}))
        cfg = ExperimentConfig.from_json(p)
        assert cfg.runs == 3 and cfg.seed == 9 and cfg.epsilon == (0.2,)
        p.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json(p)
        p.write_text("{not json")
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json(p)
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json(tmp_path / "missing.json")
