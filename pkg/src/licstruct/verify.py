"""Seeded verification flows shared by the CLI, the scripts and the acceptance tests.

Each flow returns plain data (dicts of floats, ints, bools and lists) with the
tolerance used reported next to every residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import charts, manifold
from .lie_core import LieAlgebraId, structure_constants
from .representation import (
    MonomialSpan,
    classify_subrep,
    invariant_span_check,
    verify_identities,
)
from .torsion import evaluate_torsion

MANIFOLD_TOL = 1e-9
PDE_TOL = 1e-6
JACOBIAN_RTOL = 1e-5
SPOT_TOL = 1e-10
SPOT_POINT = charts.EulerPointU2(0.0, math.pi / 2, 0.0, 0.0)


@dataclass(frozen=True)
class ManifoldConfig:
    family: str  # "u2" | "su2su2"
    count: int = 1000
    seed: int = 0
    tol: float = MANIFOLD_TOL
    rank_every: int = 1  # finite-difference rank on every k-th sample


def _u2_sample(rng):
    p = manifold.random_u2_point(rng)
    j = manifold.u2_point_to_matrix(p)
    back = manifold.u2_retract(j)
    roundtrip = max(abs(back.xi - p.xi), *(abs(x - y) for x, y in zip(back.a, p.a)))
    if back.sign != p.sign:
        roundtrip = math.inf
    x = np.array([p.xi, *(np.array(p.a) * p.sign)])
    local = manifold.u2_local_map if p.sign > 0 else _u2_local_map_negative
    return {"xi": p.xi, "a": list(p.a), "sign": p.sign}, j, roundtrip, (local, x)


def _u2_local_map_negative(x):
    return manifold.u2_point_to_matrix(manifold.U2ManifoldPoint(x[0], tuple(-np.asarray(x[1:4])), -1)).ravel()


def _su2su2_sample(rng):
    p = manifold.random_su2su2_point(rng)
    j = manifold.su2su2_point_to_matrix(p)
    back = manifold.su2su2_retract(j, 1 if p.eta > 0 else -1)
    roundtrip = max(
        abs(back.xi - p.xi),
        abs(back.eta - p.eta),
        float(np.abs(back.s1.as_array() - p.s1.as_array()).max()),
        float(np.abs(back.s2.as_array() - p.s2.as_array()).max()),
    )
    params = {"xi": p.xi, "eta": p.eta, "s1": p.s1.as_array().tolist(), "s2": p.s2.as_array().tolist()}
    return params, j, roundtrip, (manifold.su2su2_local_map, manifold.su2su2_local_coordinates(p))


def manifold_samples(cfg: ManifoldConfig):
    """Yield one record per sampled point of the family."""
    if cfg.family == "u2":
        alg, draw, expected_rank = LieAlgebraId.u2(), _u2_sample, 4
    elif cfg.family == "su2su2":
        alg, draw, expected_rank = LieAlgebraId.su2_power(2), _su2su2_sample, 6
    else:
        raise ValueError(f"unknown family {cfg.family!r}")
    sc = structure_constants(alg)
    rng = np.random.default_rng(cfg.seed)
    for index in range(cfg.count):
        params, j, roundtrip, (local, x) = draw(rng)
        square = float(np.abs(j @ j + np.eye(alg.dim)).max())
        torsion = evaluate_torsion(sc, j).max_abs
        rank = None
        if cfg.rank_every and index % cfg.rank_every == 0:
            rank = manifold.numerical_rank(manifold.fd_jacobian(local, x))
        ok = max(square, torsion, roundtrip) <= cfg.tol and rank in (None, expected_rank)
        yield {
            "index": index,
            "params": params,
            "matrix": j.tolist(),
            "square_defect": square,
            "torsion_residual": torsion,
            "roundtrip_error": roundtrip,
            "rank": rank,
            "expected_rank": expected_rank,
            "tolerance": cfg.tol,
            "pass": bool(ok),
        }


@dataclass(frozen=True)
class ChartConfig:
    target: str  # "u2" | "su2su2"
    xi: float
    eta: float | None = None
    samples: int = 1000
    seed: int = 0
    tol: float = PDE_TOL
    jacobian_rtol: float = JACOBIAN_RTOL
    method: str = "mp"


def chart_verification(cfg: ChartConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    pde = jac = 0.0
    membership_failures = 0
    if cfg.target == "u2":
        for _ in range(cfg.samples):
            p = charts.random_point_u2(rng)
            pde = max(pde, float(charts.holomorphy_residuals_u2(p, cfg.xi, method=cfg.method).max()))
            closed = charts.chart_jacobian_u2(p, cfg.xi)
            jac = max(jac, abs(charts.numeric_jacobian_u2(p, cfg.xi) - closed) / abs(closed))
            if not charts.chart_domain_membership(charts.chart_w(p, cfg.xi), cfg.xi):
                membership_failures += 1
        spot = charts.chart_jacobian_u2(SPOT_POINT, 0.0)
        spot_check = {
            "point": SPOT_POINT.as_array().tolist(),
            "xi": 0.0,
            "value": spot,
            "expected": -0.25,
            "error": abs(spot + 0.25),
            "tolerance": SPOT_TOL,
        }
    elif cfg.target == "su2su2":
        if cfg.eta is None or cfg.eta == 0:
            raise ValueError("su2su2 charts need a nonzero eta")
        for _ in range(cfg.samples):
            p = charts.random_point_w(rng)
            pde = max(pde, float(charts.holomorphy_residuals_w(p, cfg.xi, cfg.eta, method=cfg.method).max()))
            closed = charts.chart_jacobian_z(p, cfg.xi, cfg.eta)
            jac = max(jac, abs(charts.numeric_jacobian_z(p, cfg.xi, cfg.eta) - closed) / abs(closed))
        membership_failures = None
        spot_check = None
    else:
        raise ValueError(f"unknown target {cfg.target!r}")
    ok = pde <= cfg.tol and jac <= cfg.jacobian_rtol and not membership_failures
    if spot_check is not None:
        ok = ok and spot_check["error"] <= SPOT_TOL
    return {
        "target": cfg.target,
        "xi": cfg.xi,
        "eta": cfg.eta,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "method": cfg.method,
        "max_pde_residual": pde,
        "pde_tolerance": cfg.tol,
        "max_jacobian_rel_error": jac,
        "jacobian_tolerance": cfg.jacobian_rtol,
        "membership_failures": membership_failures,
        "spot_check": spot_check,
        "pass": bool(ok),
    }


# ---------------------------------------------------------------------------
# representation


def _finite_windows(q: int, width: int):
    """Symmetric windows around 0 that are not among the classified spans."""
    for r in range(width + 1):
        yield MonomialSpan.finite(range(-r, r + 1))


def subrep_agreement(q: int, depth: int = 10) -> dict:
    """Each classified span is invariant; finite windows other than D escape."""
    cls = classify_subrep(q)
    spans = []
    for sub in cls.subspaces:
        spans.append({"label": sub.label, "kind": sub.span.kind, "invariant": invariant_span_check(q, sub.span, depth)})
    k = abs(q) // 2
    escapes = []
    for w in _finite_windows(q, depth):
        if cls.case == 2 and w.members == frozenset(range(-k, k + 1)):
            continue
        escapes.append(not invariant_span_check(q, w, depth))
    finite_dim = None
    if cls.case == 2:
        finite_dim = cls.subspaces[0].span.dimension()
    ok = all(s["invariant"] for s in spans) and all(escapes)
    if cls.case == 2:
        ok = ok and finite_dim == 2 * k + 1
    return {
        "q": q,
        "case": cls.case,
        "label": cls.slice_label,
        "spans": spans,
        "finite_windows_checked": len(escapes),
        "finite_windows_escaping": sum(escapes),
        "finite_dimension": finite_dim,
        "agree": bool(ok),
    }


def representation_report(xi: Fraction, pmax: int = 20, qmax: int = 20, subrep_qmax: int = 12, depth: int = 10) -> dict:
    reports = verify_identities(Fraction(xi), pmax, qmax)
    subrep = [subrep_agreement(q, depth) for q in range(-subrep_qmax, subrep_qmax + 1)]
    ok = all(r.ok for r in reports) and all(s["agree"] for s in subrep)
    return {
        "xi": {"num": Fraction(xi).numerator, "den": Fraction(xi).denominator},
        "pmax": pmax,
        "qmax": qmax,
        "identities": [
            {"name": r.name, "checked": r.checked, "failures": r.failures, "pass": r.ok} for r in reports
        ],
        "subrep_depth": depth,
        "subrep": subrep,
        "pass": bool(ok),
    }
