"""Generate the bundled 20-design fixture src/conepareto/data/synthetic20.csv.

Designs are added greedily from random proposals: front candidates on an
annulus of radius 2.6 to 3.4, inner candidates well inside it. A proposal is
kept only if, under each of C_{pi/4}, C_{pi/2} and C_{3pi/4},

* every Pareto design i is at distance >= SEP from the cone for all
  differences mu_j - mu_i (no other design is close to dominating it), and
* every non-Pareto design has suboptimality gap >= SEP.

The three Pareto sets are therefore strictly nested and do not move under
rounding or small perturbations, so success rates depend on the noise level
and not on near-ties. Objective 1 is written as a cost (its negative) so
loading exercises column negation.

    python scripts/make_fixture.py
"""

import csv
import math
from pathlib import Path

import numpy as np

from conepareto.cone import distance_to_cone, make_theta_cone
from conepareto.gaps import build_gap_table

SEED = 20240607
SEP = 0.1
N_FRONT, N_INNER = 8, 12
OUT = Path(__file__).resolve().parents[1] / "src" / "conepareto" / "data" / "synthetic20.csv"
CONES = [make_theta_cone(t) for t in (math.pi / 4, math.pi / 2, 3 * math.pi / 4)]


def separated(mu):
    for cone in CONES:
        table = build_gap_table(mu, cone)
        P = table.pareto_mask
        if np.any(table.delta_star[~P] < SEP):
            return False
        for i in np.flatnonzero(P):
            for j in range(len(mu)):
                if j != i and distance_to_cone(cone, mu[j] - mu[i]) < SEP:
                    return False
    return True


def propose(rng, lo, hi):
    phi = rng.uniform(-0.2, math.pi / 2 + 0.2)
    r = rng.uniform(lo, hi)
    return np.round([r * math.cos(phi), r * math.sin(phi)], 4)


def grow(rng, mu, n, lo, hi, tries=5000):
    for _ in range(tries):
        if n == 0:
            return mu
        cand = np.vstack([mu, propose(rng, lo, hi)]) if len(mu) else propose(rng, lo, hi)[None]
        if separated(cand):
            mu, n = cand, n - 1
    raise RuntimeError("could not place all designs; lower SEP")


def main():
    rng = np.random.default_rng(SEED)
    mu = grow(rng, np.empty((0, 2)), N_FRONT, 2.6, 3.4)
    mu = grow(rng, mu, N_INNER, 0.5, 2.4)
    with open(OUT, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["design", "cost", "value"])
        for k, (x, y) in enumerate(mu):
            w.writerow([f"d{k:02d}", f"{-x + 0.0:.4f}", f"{y:.4f}"])
    for name, cone in zip(("pi/4", "pi/2", "3pi/4"), CONES):
        print(name, build_gap_table(mu, cone).pareto_set)


if __name__ == "__main__":
    main()
