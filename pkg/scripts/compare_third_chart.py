"""Holomorphy residuals of the two candidate third coordinates on SU(2) x SU(2).

The corrected coordinate z3 = u1 * u2**beta is compared with the variant that
carries sqrt(sin theta2) in place of the complex power. Prints the largest
residual of each over random interior points for a few (xi, eta).
"""

import argparse

import numpy as np

from licstruct.charts import (
    EulerPointW,
    antiholomorphic_fields_w,
    holomorphy_residuals_w,
    random_point_w,
    z3_as_printed,
)


def printed_residual(p: EulerPointW, xi: float, eta: float, h: float = 1e-6) -> float:
    x = p.as_array()
    grad = np.empty(6, dtype=complex)
    for k in range(6):
        e = np.zeros(6)
        e[k] = h
        grad[k] = (z3_as_printed(EulerPointW(*(x + e)), xi, eta) - z3_as_printed(EulerPointW(*(x - e)), xi, eta)) / (2 * h)
    return float(np.abs(antiholomorphic_fields_w(p, xi, eta) @ grad).max())


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'xi':>6} {'eta':>6} {'corrected':>12} {'sqrt variant':>14}")
    for xi, eta in ((0.0, 1.0), (1.0, -2.0), (-0.5, 3.0), (2.0, 0.5)):
        points = [random_point_w(rng) for _ in range(args.samples)]
        ours = max(float(holomorphy_residuals_w(p, xi, eta).max()) for p in points)
        theirs = max(printed_residual(p, xi, eta) for p in points)
        print(f"{xi:6.2f} {eta:6.2f} {ours:12.2e} {theirs:14.2e}")


if __name__ == "__main__":
    main()
