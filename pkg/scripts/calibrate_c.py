"""Derive the default sub-Gaussian constant ``c`` of the sample budget.

The reference configuration is K=206 designs, eps=0.1, delta=0.01, beta=1,
sigma=1, D=2, for which the per-design budget should come out near 38.8e3. With the
per-pair confidence ``delta' = 2 delta / (K (K - 1))`` the budget is

    L = 4 c^2 / eps^2 * log(4 D / delta')

so ``c = eps * sqrt(L / (4 log(4 D / delta')))``. We solve for c at
L = 38.8e3 and round to four decimals; the result is bandit.DEFAULT_C.

    python scripts/calibrate_c.py
"""

import math

from conepareto.bandit import DEFAULT_C, split_delta, theorem_budget

TARGET_L, EPS, DELTA, K, D = 38.8e3, 0.1, 0.01, 206, 2


def main():
    dprime = split_delta(DELTA, K)
    c = EPS * math.sqrt(TARGET_L / (4 * math.log(4 * D / dprime)))
    print(f"delta_prime = {dprime:.6e}")
    print(f"c (exact)   = {c:.6f}")
    print(f"c (rounded) = {round(c, 4)}   DEFAULT_C = {DEFAULT_C}")
    for eps, target in ((0.1, 38.8e3), (0.01, 38.8e5)):
        L = theorem_budget(eps, DELTA, K, 1.0, round(c, 4), 1.0, D)
        print(f"eps={eps}: L={L}  relative error {abs(L - target) / target:.2%}")


if __name__ == "__main__":
    main()
