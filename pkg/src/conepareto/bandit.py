"""Noisy bandit feedback and the naive elimination algorithm.

Naive elimination samples every design ``L`` times, averages the noisy
reward vectors and returns the Pareto set of the empirical means.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cone import DEFAULT_TOL
from .exceptions import ConfigError
from .gaps import build_gap_table
from .pareto import _means_array, pareto_set

# Calibrated so that the theorem budget with eps=0.1, delta=0.01, K=206,
# beta=1, sigma=1, D=2 gives L ~= 38.8e3. See scripts/calibrate_c.py.
DEFAULT_C = 2.4142

# Upper bound on samples drawn per design in one call to the generator.
_CHUNK = 1 << 18


def sample_budget(epsilon, delta, beta=1.0, c=DEFAULT_C, sigma=1.0, D=2):
    """Per-design budget ``ceil(4 beta^2 c^2 sigma^2 / eps^2 * log(4 D / delta))``, at least 1."""
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if not beta >= 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    if not sigma >= 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    if int(D) != D or D < 1:
        raise ValueError(f"D must be a positive integer, got {D}")
    L = math.ceil(4 * beta**2 * c**2 * sigma**2 / epsilon**2 * math.log(4 * D / delta))
    return max(1, L)


def split_delta(delta, K):
    """Per-pair confidence ``2 delta / (K (K - 1))`` used by the theorem budget."""
    if int(K) != K or K < 2:
        raise ValueError(f"K must be an integer >= 2, got {K}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return 2 * delta / (K * (K - 1))


def theorem_budget(epsilon, delta, K, beta=1.0, c=DEFAULT_C, sigma=1.0, D=2):
    """Budget that makes naive elimination (epsilon, delta)-PAC for ``K`` designs."""
    return sample_budget(epsilon, split_delta(delta, K), beta, c, sigma, D)


@dataclass(frozen=True)
class NoiseModel:
    """Additive observation noise.

    ``kind`` is ``"gaussian"`` (i.i.d. coordinates with standard deviation
    ``scale``) or ``"uniform"`` (i.i.d. coordinates on ``[-scale, scale]``).
    """

    kind: str = "gaussian"
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("gaussian", "uniform"):
            raise ConfigError(f"unknown noise kind {self.kind!r}")
        if not self.scale >= 0:
            raise ConfigError(f"noise scale must be nonnegative, got {self.scale}")

    def norm_subgaussian_sigma(self, dim):
        # Recorded with scaling constant 1: sigma * sqrt(D) for Gaussian
        # coordinates, and the norm bound half_width * sqrt(D) for uniform.
        return self.scale * math.sqrt(dim)

    def sample(self, rng, size):
        if self.kind == "gaussian":
            return self.scale * rng.standard_normal(size)
        return rng.uniform(-self.scale, self.scale, size)


@dataclass(frozen=True)
class RunResult:
    returned_set: list
    empirical_means: np.ndarray
    n_samples: int
    run_index: int = 0

    @property
    def total_samples(self):
        return self.n_samples * self.empirical_means.shape[0]

    def to_json(self):
        return json.dumps({
            "run": self.run_index,
            "L": self.n_samples,
            "total_samples": self.total_samples,
            "returned_set": self.returned_set,
            "empirical_means": self.empirical_means.tolist(),
        })


def design_streams(seed, run_index, n_designs):
    """One independent generator per design for run ``run_index``.

    Streams depend only on ``(seed, run_index, design)``, so the first ``L``
    draws of a run are shared by every budget ``L' >= L`` and every cone.
    """
    return [np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(run_index, k)))
            for k in range(n_designs)]


def naive_elimination(means, cone, n_samples, noise=NoiseModel(), rngs=None,
                      tol=DEFAULT_TOL, run_index=0):
    """Run naive elimination once.

    Parameters
    ----------
    means : DesignSet or array of shape (K, D)
        True mean reward vectors.
    cone : PolyhedralCone
    n_samples : int
        Evaluations per design (``L``); ``L * K`` in total.
    noise : NoiseModel
    rngs : list of numpy Generators, or int seed
        Per-design random streams. An int is expanded with
        :func:`design_streams`.
    """
    mu = _means_array(means)
    K, D = mu.shape
    if int(n_samples) != n_samples or n_samples < 1:
        raise ValueError(f"n_samples must be a positive integer, got {n_samples}")
    n_samples = int(n_samples)
    if noise.scale == 0:
        emp = mu.copy()
    else:
        if rngs is None:
            rngs = 0
        if isinstance(rngs, (int, np.integer)):
            rngs = design_streams(int(rngs), run_index, K)
        if len(rngs) != K:
            raise ValueError(f"need {K} random streams, got {len(rngs)}")
        emp = np.empty_like(mu)
        for k in range(K):
            total = np.zeros(D)
            left = n_samples
            while left:
                n = min(left, _CHUNK)
                total += (mu[k] + noise.sample(rngs[k], (n, D))).sum(axis=0)
                left -= n
            emp[k] = total / n_samples
    return RunResult(pareto_set(emp, cone, tol), emp, n_samples, run_index)


def empirical_gaps(run, cone, tol=DEFAULT_TOL):
    """Gap table of the empirical means of ``run``."""
    return build_gap_table(run.empirical_means, cone, tol)


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings for a battery of naive-elimination runs.

    ``epsilon`` and ``L`` may be lists, giving a grid. ``L="auto"`` resolves
    to :func:`theorem_budget` per epsilon.
    """

    epsilon: tuple = (0.1,)
    delta: float = 0.01
    L: object = "auto"
    c: float = DEFAULT_C
    sigma: float = 1.0
    runs: int = 100
    seed: int = 0
    noise_kind: str = "gaussian"

    def __post_init__(self):
        eps = self.epsilon
        eps = tuple(eps) if isinstance(eps, (list, tuple)) else (eps,)
        if not eps or not all(isinstance(e, (int, float)) and e > 0 for e in eps):
            raise ConfigError(f"epsilon must be positive, got {self.epsilon!r}")
        object.__setattr__(self, "epsilon", tuple(float(e) for e in eps))
        if not (isinstance(self.delta, (int, float)) and 0 < self.delta < 1):
            raise ConfigError(f"delta must lie in (0, 1), got {self.delta!r}")
        L = self.L
        if L != "auto":
            Ls = tuple(L) if isinstance(L, (list, tuple)) else (L,)
            if not Ls or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 1
                                 for v in Ls):
                raise ConfigError(f"L must be 'auto' or positive integers, got {L!r}")
            object.__setattr__(self, "L", Ls)
        if not (isinstance(self.c, (int, float)) and self.c > 0):
            raise ConfigError(f"c must be positive, got {self.c!r}")
        if not (isinstance(self.sigma, (int, float)) and self.sigma >= 0):
            raise ConfigError(f"sigma must be nonnegative, got {self.sigma!r}")
        if not (isinstance(self.runs, int) and self.runs >= 1):
            raise ConfigError(f"runs must be a positive integer, got {self.runs!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ConfigError(f"seed must be a 64-bit nonnegative integer, got {self.seed!r}")
        NoiseModel(self.noise_kind, self.sigma)

    @property
    def noise(self):
        return NoiseModel(self.noise_kind, self.sigma)

    @classmethod
    def from_dict(cls, data):
        known = {"epsilon", "delta", "L", "c", "sigma", "runs", "seed", "noise_kind"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path):
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.from_dict(data)

    def budgets(self, epsilon, K, beta, D):
        """Budgets ``L`` to run for a given epsilon."""
        if self.L == "auto":
            return (theorem_budget(epsilon, self.delta, K, beta, self.c, self.sigma, D),)
        return self.L
