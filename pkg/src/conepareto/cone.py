"""Polyhedral ordering cones ``C = {x : W x >= 0}`` and their geometry.

Rows of ``W`` are normalized to unit length on construction. A cone is only
accepted if it is pointed (``W`` has full column rank) and solid (some ``x``
satisfies ``W x > 0``). Redundant rows are kept as given: they never change
the set, but the built-in constructors never produce them.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import linprog, nnls

from .exceptions import (
    ConeError,
    ConvergenceError,
    DegenerateConeError,
    DimensionError,
    EstimationError,
)

DEFAULT_TOL = 1e-9

_ROW_SNAP = 1e-15


def _as_vector(x, dim=None, name="x"):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DimensionError(f"{name} must be a 1-d vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionError(f"{name} has dimension {v.shape[0]}, expected {dim}")
    return v


class PolyhedralCone:
    """Ordering cone given by a constraint matrix ``W`` (``N x D``).

    Parameters
    ----------
    W : array_like of shape (n_constraints, dim)
        Halfspace normals. Rows are rescaled to unit Euclidean norm.
    family : tuple, optional
        ``("orthant", D)`` or ``("theta", theta)`` for the built-in families,
        which enables :func:`beta_closed_form`. Leave unset for user cones.

    Instances are immutable; ``alphas`` is computed once at construction.
    Redundant rows are kept as given. They never change the cone, but a
    minimal ``W`` keeps ``alpha`` and ``beta`` meaningful per face.
    """

    def __init__(self, W, family=None):
        W = np.array(W, dtype=float, copy=True)
        if W.ndim != 2 or W.shape[0] == 0 or W.shape[1] == 0:
            raise DimensionError(f"W must be a non-empty 2-d matrix, got shape {W.shape}")
        if not np.all(np.isfinite(W)):
            raise ConeError("W contains non-finite entries")
        norms = np.linalg.norm(W, axis=1)
        if np.any(norms == 0):
            raise ConeError("W contains a zero row")
        W /= norms[:, None]
        W[np.abs(W) < _ROW_SNAP] = 0.0
        W /= np.linalg.norm(W, axis=1)[:, None]
        if np.linalg.matrix_rank(W) < W.shape[1]:
            raise DegenerateConeError("cone is not pointed: W does not have full column rank")
        W.setflags(write=False)
        self._W = W
        self.family = family
        self._interior = _find_interior_direction(W)
        if self._interior is None:
            raise DegenerateConeError("cone is not solid: no x with W x > 0")
        self._alphas = _compute_alphas(W)

    @property
    def W(self):
        return self._W

    @property
    def dim(self):
        return self._W.shape[1]

    @property
    def n_constraints(self):
        return self._W.shape[0]

    @property
    def alphas(self):
        return self._alphas

    @property
    def interior_direction(self):
        """A unit vector ``u`` with ``W u > 0``."""
        return self._interior

    def __repr__(self):
        if self.family is not None:
            return f"PolyhedralCone(family={self.family!r})"
        return f"PolyhedralCone(dim={self.dim}, n_constraints={self.n_constraints})"


def _find_interior_direction(W):
    dim = W.shape[1]
    for cand in (np.ones(dim), W.sum(axis=0)):
        if np.all(W @ cand > 0):
            return cand / np.linalg.norm(cand)
    # max t  s.t.  W x >= t, |x_k| <= 1, t <= 1
    n = W.shape[0]
    c = np.zeros(dim + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-W, np.ones((n, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(n),
                  bounds=[(-1, 1)] * dim + [(None, 1)], method="highs")
    if res.status != 0 or -res.fun <= 1e-9:
        return None
    x = res.x[:dim]
    return x / np.linalg.norm(x)


def _compute_alphas(W):
    alphas = np.empty(W.shape[0])
    zeros = np.zeros(W.shape[0])
    for n, w in enumerate(W):
        alphas[n] = np.linalg.norm(project_onto_polyhedron(W, zeros, w))
    if np.any(alphas <= 1e-12):
        raise DegenerateConeError(f"alpha coefficients vanish: {alphas}")
    alphas = np.minimum(alphas, 1.0)
    alphas.setflags(write=False)
    return alphas


def make_orthant(dim):
    """Nonnegative orthant of ``R^dim``."""
    if int(dim) != dim or dim < 1:
        raise ConeError(f"invalid dimension {dim!r}")
    dim = int(dim)
    return PolyhedralCone(np.eye(dim), family=("orthant", dim))


def make_planar_cone(lo, hi):
    """2-D cone of all directions with polar angle in ``[lo, hi]``.

    Row 0 is the inward normal of the ray at ``lo``, row 1 that of the ray
    at ``hi``. Requires ``0 < hi - lo < pi``.
    """
    width = hi - lo
    if not (0 < width < math.pi):
        raise ConeError(f"angular width must lie in (0, pi), got {width}")
    return PolyhedralCone(_planar_rows(lo, hi), family=("planar", float(lo), float(hi)))


def _planar_rows(lo, hi):
    a0 = lo + math.pi / 2
    a1 = hi - math.pi / 2
    return [[math.cos(a0), math.sin(a0)], [math.cos(a1), math.sin(a1)]]


def make_theta_cone(theta):
    """The cone ``C_theta`` of polar angles ``[pi/4 - theta/2, pi/4 + theta/2]``."""
    if not (0 < theta < math.pi):
        raise ConeError(f"theta must lie in (0, pi), got {theta}")
    rows = _planar_rows(math.pi / 4 - theta / 2, math.pi / 4 + theta / 2)
    return PolyhedralCone(rows, family=("theta", float(theta)))


def contains(cone, x, tol=DEFAULT_TOL):
    x = _as_vector(x, cone.dim)
    return bool(np.min(cone.W @ x) >= -tol)


def strictly_contains(cone, x, tol=0.0):
    x = _as_vector(x, cone.dim)
    return bool(np.min(cone.W @ x) > tol)


def _finish(W, b, x, mask, feas_tol):
    # Solve the equality-constrained projection on the guessed active set and
    # accept it only if the multipliers are nonnegative, the set is tight and
    # y is feasible. Those three together are the KKT conditions.
    if not np.any(mask):
        y = x.copy()
    else:
        A = W[mask]
        r = b[mask] - A @ x
        if r.size == 1 and r[0] >= 0:
            y = x + (r[0] / (A[0] @ A[0])) * A[0]
        else:
            lam, res = nnls(A @ A.T, r)
            if res > feas_tol * (1.0 + np.linalg.norm(r)):
                return None
            y = x + A.T @ lam
    if np.min(W @ y - b) < -feas_tol:
        return None
    return y


def _least_distance(W, h):
    # min ||z|| s.t. W z >= h via the Lawson-Hanson reduction to NNLS
    N, D = W.shape
    E = np.vstack([W.T, h[None, :]])
    f = np.zeros(D + 1)
    f[D] = 1.0
    u, _ = nnls(E, f, maxiter=50 * (N + D + 1))
    r = E @ u - f
    if abs(r[D]) < 1e-14:
        return None
    return -r[:D] / r[D]


def project_onto_polyhedron(W, b, x, max_iter=100_000, tol=1e-10):
    """Euclidean projection of ``x`` onto ``{y : W y >= b}``.

    The least-distance problem is solved exactly through NNLS and then
    polished on its active set. If that fails numerically, Dykstra's
    alternating projections take over, with the same active-set polish
    tried every few sweeps; a Dykstra iterate is only accepted once it
    passes the KKT check.

    Raises
    ------
    ConvergenceError
        If no point satisfying the optimality conditions is found within
        ``max_iter`` sweeps (this includes infeasible systems).
    """
    W = np.atleast_2d(np.asarray(W, dtype=float))
    x = _as_vector(x, W.shape[1])
    b = _as_vector(b, W.shape[0], name="b")

    slack = W @ x - b
    if np.all(slack >= 0):
        return x.copy()

    scale = 1.0 + max(np.max(np.abs(b)), np.linalg.norm(x))
    feas_tol = 1e-10 * scale
    kkt_tol = 1e-8 * scale

    def accept(y):
        s = W @ y - b
        for act in (1e-9, 1e-6, 1e-3):
            cand = _finish(W, b, x, s <= act * scale, feas_tol)
            if cand is not None:
                return cand
        return None

    # cheap guess: the violated rows are exactly the active ones
    y = _finish(W, b, x, slack < 0, feas_tol)
    if y is not None:
        return y

    z = _least_distance(W, b - W @ x)
    if z is not None:
        y = accept(x + z)
        if y is not None:
            return y

    norms2 = np.einsum("ij,ij->i", W, W)
    y = x.copy()
    corr = np.zeros_like(W)
    viol = -np.min(slack)
    for sweep in range(1, max_iter + 1):
        y_prev = y
        for n in range(W.shape[0]):
            z = y + corr[n]
            s = W[n] @ z - b[n]
            y = z - (s / norms2[n]) * W[n] if s < 0 else z
            corr[n] = z - y
        step = np.linalg.norm(y - y_prev)
        if step < tol or sweep % 8 == 0:
            viol = max(0.0, -np.min(W @ y - b))
            cand = accept(y)
            if cand is not None:
                return cand
            if step < tol and viol <= feas_tol:
                v, stat = kkt_residual(W, b, x, y, 1e-6 * scale)
                if stat <= kkt_tol:
                    return y
    raise ConvergenceError(f"projection did not converge in {max_iter} sweeps", viol)


def kkt_residual(W, b, x, y, active_tol=1e-8):
    """Return ``(max_violation, stationarity_residual)`` for a candidate projection.

    Stationarity is the distance from ``y - x`` to the cone generated by the
    rows active at ``y``.
    """
    W = np.atleast_2d(np.asarray(W, dtype=float))
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slack = W @ y - b
    viol = max(0.0, -float(np.min(slack)))
    active = slack <= active_tol
    g = y - x
    if not np.any(active):
        return viol, float(np.linalg.norm(g))
    _, res = nnls(W[active].T, g)
    return viol, float(res)


def distance_to_cone(cone, x):
    x = _as_vector(x, cone.dim)
    y = project_onto_polyhedron(cone.W, np.zeros(cone.n_constraints), x)
    return float(np.linalg.norm(x - y))


def distance_to_interior_complement(cone, x):
    """Distance from ``x`` to the complement of the open cone; zero off the interior."""
    x = _as_vector(x, cone.dim)
    return max(0.0, float(np.min(cone.W @ x)))


def distance_to_shifted_intersection(cone, x):
    """``d(x, C ∩ (x + C))``, the distance to ``{y : W y >= (W x)^+}``."""
    x = _as_vector(x, cone.dim)
    b = np.maximum(cone.W @ x, 0.0)
    y = project_onto_polyhedron(cone.W, b, x)
    return float(np.linalg.norm(x - y))


def alpha_coefficients(cone):
    """``alpha_n = max of w_n . u over unit u in C``, one per row of ``W``."""
    return cone.alphas.copy()


def dual_cone_generators(cone):
    """Rows generating the dual cone ``C+`` (the rows of ``W`` themselves)."""
    return np.array(cone.W)


class Provenance(enum.Enum):
    CLOSED_FORM = "closed_form"
    EMPIRICAL_ESTIMATE = "empirical_estimate"


@dataclass(frozen=True)
class ConeConstants:
    beta1: float
    beta2: float
    provenance: Provenance

    def __post_init__(self):
        if self.beta1 < 1 or self.beta2 < 1:
            raise ValueError("beta constants must be >= 1")

    @property
    def beta(self):
        return max(self.beta1, self.beta2)


def beta_closed_form(family):
    """Closed-form ``beta`` constants for the built-in cone families.

    ``family`` is either a :class:`PolyhedralCone` built by :func:`make_orthant`
    or :func:`make_theta_cone`, or one of the tuples ``("orthant", D)`` and
    ``("theta", theta)``.
    """
    if isinstance(family, PolyhedralCone):
        if family.family is None:
            raise ConeError("closed-form beta is only known for built-in cone families")
        family = family.family
    kind, param = family[0], family[1]
    if kind == "orthant":
        if int(param) != param or param < 1:
            raise ConeError(f"invalid dimension {param!r}")
        return ConeConstants(1.0, 1.0, Provenance.CLOSED_FORM)
    if kind == "theta":
        if not (0 < param < math.pi):
            raise ConeError(f"theta must lie in (0, pi), got {param}")
        if param <= math.pi / 2:
            b = 1.0 / math.sin(param)
            return ConeConstants(b, b, Provenance.CLOSED_FORM)
        return ConeConstants(1.0, 1.0, Provenance.CLOSED_FORM)
    raise ConeError(f"no closed form for cone family {kind!r}")


def beta_empirical(cone, samples, rng_seed=0):
    """Lower estimate of ``beta1`` and ``beta2`` by random sampling.

    Draws ``samples`` standard Gaussian points. Points outside ``C`` feed the
    ``beta1`` ratio ``d(x, C ∩ (x+C)) / d(x, C)``; interior points feed the
    ``beta2`` ratio, whose numerator is the closed-form m-gap of ``x``.
    The ratios are scale invariant, so the radial law does not matter.
    Each estimate is floored at 1, the known lower bound.
    """
    if int(samples) != samples or samples < 1:
        raise ValueError(f"samples must be a positive integer, got {samples!r}")
    rng = np.random.default_rng(rng_seed)
    X = rng.standard_normal((int(samples), cone.dim))
    S = X @ cone.W.T
    smin = S.min(axis=1)

    inside = smin > 1e-12
    r2 = np.min(np.maximum(S[inside], 0.0) / cone.alphas, axis=1) / smin[inside]

    r1 = []
    zeros = np.zeros(cone.n_constraints)
    for x, s in zip(X[smin < 0], S[smin < 0]):
        d = np.linalg.norm(x - project_onto_polyhedron(cone.W, zeros, x))
        if d <= 1e-12:
            continue
        y = project_onto_polyhedron(cone.W, np.maximum(s, 0.0), x)
        r1.append(np.linalg.norm(x - y) / d)

    if not r1 or r2.size == 0:
        raise EstimationError(
            f"not enough usable samples (outside: {len(r1)}, interior: {r2.size})")
    return ConeConstants(max(1.0, float(max(r1))), max(1.0, float(r2.max())),
                         Provenance.EMPIRICAL_ESTIMATE)


def cone_to_dict(cone):
    return {"dim": cone.dim, "rows": cone.W.tolist()}


def cone_from_dict(data):
    try:
        dim = int(data["dim"])
        rows = np.asarray(data["rows"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConeError(f"malformed cone description: {exc}") from exc
    if rows.ndim != 2 or rows.shape[1] != dim:
        raise ConeError(f"rows must be a list of {dim}-vectors")
    if not np.all(np.isfinite(rows)):
        raise ConeError("cone rows contain non-finite entries")
    return PolyhedralCone(rows)


def save_cone(cone, path):
    Path(path).write_text(json.dumps(cone_to_dict(cone), indent=2) + "\n", encoding="utf-8")


def load_cone(path):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConeError(f"{path}: invalid JSON: {exc}") from exc
    return cone_from_dict(data)


def parse_cone_spec(spec):
    """Build a cone from ``orthant:D``, ``theta:<radians>`` or a JSON file path."""
    kind, sep, arg = spec.partition(":")
    if sep and kind == "orthant":
        try:
            return make_orthant(int(arg))
        except ValueError as exc:
            raise ConeError(f"bad cone spec {spec!r}: {exc}") from exc
    if sep and kind == "theta":
        try:
            return make_theta_cone(float(arg))
        except ValueError as exc:
            raise ConeError(f"bad cone spec {spec!r}: {exc}") from exc
    if Path(spec).is_file():
        return load_cone(spec)
    raise ConeError(f"unrecognized cone spec {spec!r}")
