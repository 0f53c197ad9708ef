"""Run every verification flow once and write a JSON summary.

    python scripts/run_acceptance.py --out results.json

This is the script form of tests/test_acceptance.py without the assertions;
the timings it prints are wall-clock on the current machine.
"""

import argparse
import json
import time
from fractions import Fraction

from licstruct import verify
from licstruct.lie_core import LieAlgebraId, structure_constants
from licstruct.serialize import dumps
from licstruct.torsion import torsion_equations


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--out", help="write the summary JSON here")
    args = ap.parse_args()
    summary = {}

    for name in ("su2", "u2", "su2su2", "u2u2"):
        alg = {"su2": LieAlgebraId.su2(), "u2": LieAlgebraId.u2()}.get(name) or (
            LieAlgebraId.su2_power(2) if name == "su2su2" else LieAlgebraId.u2_power(2)
        )
        eqs, dt = timed(lambda: torsion_equations(structure_constants(alg)))
        summary[f"torsion/{name}"] = {"count": len(eqs), "nonzero": sum(not e.poly.is_zero() for e in eqs), "seconds": dt}

    for family in ("u2", "su2su2"):
        cfg = verify.ManifoldConfig(family, args.samples, args.seed, rank_every=10)
        records, dt = timed(lambda: list(verify.manifold_samples(cfg)))
        summary[f"manifold/{family}"] = {
            "failures": sum(not r["pass"] for r in records),
            "worst": max(max(r["square_defect"], r["torsion_residual"], r["roundtrip_error"]) for r in records),
            "seconds": dt,
        }

    charts = [("u2", xi, None) for xi in (0.0, 1.0, -3.0)] + [("su2su2", 0.0, 1.0), ("su2su2", 1.0, -2.0)]
    for target, xi, eta in charts:
        rep, dt = timed(lambda: verify.chart_verification(verify.ChartConfig(target, xi, eta, args.samples, args.seed)))
        summary[f"chart/{target}/{xi}/{eta}"] = {
            "pde": rep["max_pde_residual"],
            "jacobian": rep["max_jacobian_rel_error"],
            "pass": rep["pass"],
            "seconds": dt,
        }

    for xi in (Fraction(0), Fraction(1), Fraction(-2, 3)):
        rep, dt = timed(lambda: verify.representation_report(xi))
        summary[f"representation/{xi}"] = {"pass": rep["pass"], "seconds": dt}

    width = max(map(len, summary))
    for key, row in summary.items():
        cells = ", ".join(f"{k}={v:.3g}" if isinstance(v, float) else f"{k}={v}" for k, v in row.items())
        print(f"{key:<{width}}  {cells}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(summary) + "\n")


if __name__ == "__main__":
    main()
