"""Command-line entry point: ``licstruct <command> [options]``.

Every command writes one JSON document (``sample-manifold`` writes JSON lines)
and exits 0 when everything checked passes, 1 on a failed verification or a
structured input error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import canonical, verify
from .lie_core import LieAlgebraId, structure_constants
from .manifold import OffManifoldError
from .serialize import (
    SchemaError,
    algebra_to_json,
    automorphism_to_json,
    dumps,
    equation_to_json,
    form_from_json,
    form_to_json,
    matrix_from_json,
    matrix_to_json,
    parse_algebra,
    rational_from_json,
)
from .torsion import TORSION_TOL, is_complex_structure, torsion_equations

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

COMMANDS = (
    "gen-torsion",
    "check",
    "canonicalize",
    "equivalent",
    "sample-manifold",
    "chart-verify",
    "rep-verify",
    "extend",
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    algebra: LieAlgebraId | None = None
    seed: int = 0
    samples: int | None = None
    tol: float | None = None
    matrix: np.ndarray | None = field(default=None, compare=False)
    form_a: dict | None = None
    form_b: dict | None = None
    xi: Fraction | None = None
    eta: float | None = None
    nu2: int = 1
    pmax: int = 20
    qmax: int = 20
    subrep_qmax: int = 12
    depth: int = 10
    nonzero_only: bool = False
    method: str = "mp"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("tolerance must be positive")
        if self.samples is not None and self.samples < 1:
            raise UsageError("samples must be positive")

    def tolerance(self, default: float) -> float:
        return default if self.tol is None else self.tol


def _error(kind: str, message: str, **extra) -> dict:
    return {"error": {"type": kind, "message": message, **extra}}


# ---------------------------------------------------------------------------
# commands; each returns (exit code, report or list of JSON-lines records)


def _gen_torsion(cfg: RunConfig):
    eqs = torsion_equations(structure_constants(cfg.algebra))
    nonzero = [e for e in eqs if e.poly]
    shown = nonzero if cfg.nonzero_only else eqs
    return EXIT_OK, {
        "algebra": algebra_to_json(cfg.algebra),
        "count": len(eqs),
        "nonzero_count": len(nonzero),
        "equations": [equation_to_json(e) for e in shown],
    }


def _input_matrix(cfg: RunConfig) -> np.ndarray:
    if cfg.matrix is not None:
        if cfg.matrix.shape != (cfg.algebra.dim, cfg.algebra.dim):
            raise SchemaError(f"expected a {cfg.algebra.dim}x{cfg.algebra.dim} matrix")
        return cfg.matrix
    if cfg.form_a is not None:
        return form_from_json(cfg.algebra, cfg.form_a).matrix()
    raise UsageError("provide --matrix or --form")


def _check(cfg: RunConfig):
    j = _input_matrix(cfg)
    rep = is_complex_structure(structure_constants(cfg.algebra), j, cfg.tolerance(TORSION_TOL))
    return (EXIT_OK if rep else EXIT_FAIL), {"algebra": algebra_to_json(cfg.algebra), **rep.to_json()}


def _canonicalize(cfg: RunConfig):
    j = _input_matrix(cfg)
    alg = cfg.algebra
    try:
        if alg == LieAlgebraId.su2():
            res = canonical.canonicalize_su2_torsion_free(j, cfg.tolerance(TORSION_TOL))
        elif alg == LieAlgebraId.u2():
            res = canonical.canonicalize_u2(j)
        elif alg == LieAlgebraId.su2_power(2):
            res = canonical.canonicalize_su2su2(j)
        else:
            res = canonical.canonicalize_blockform(alg, j)
    except OffManifoldError as exc:
        return EXIT_FAIL, _error("off_manifold", str(exc), residual=exc.residual)
    except canonical.CanonicalizationError as exc:
        return EXIT_FAIL, _error("not_integrable", str(exc))
    return EXIT_OK, {
        "algebra": algebra_to_json(alg),
        "form": form_to_json(res.form),
        "witness": automorphism_to_json(res.witness),
        "witness_matrix": matrix_to_json(res.witness_matrix),
        "residual": res.residual,
        "tolerance": canonical.RESIDUAL_TOL,
    }


def _equivalent(cfg: RunConfig):
    if cfg.form_a is None or cfg.form_b is None:
        raise UsageError("equivalent needs --a and --b")
    a = form_from_json(cfg.algebra, cfg.form_a)
    b = form_from_json(cfg.algebra, cfg.form_b)
    tol = cfg.tolerance(canonical.EQUIV_TOL)
    res = canonical.equivalent(cfg.algebra, a, b, tol=tol, rng=np.random.default_rng(cfg.seed))
    return (EXIT_OK if res else EXIT_FAIL), {
        "algebra": algebra_to_json(cfg.algebra),
        "a": form_to_json(a),
        "b": form_to_json(b),
        "equivalent": bool(res),
        "status": res.status,
        "witness": automorphism_to_json(res.witness),
        "residual": res.residual,
        "tolerance": tol,
        "detail": res.detail,
    }


def _sample_manifold(cfg: RunConfig):
    family = {LieAlgebraId.u2(): "u2", LieAlgebraId.su2_power(2): "su2su2"}.get(cfg.algebra)
    if family is None:
        raise UsageError("sample-manifold supports u2 and su2su2")
    mcfg = verify.ManifoldConfig(family, cfg.samples or 1000, cfg.seed, cfg.tolerance(verify.MANIFOLD_TOL))
    records = list(verify.manifold_samples(mcfg))
    failures = sum(not r["pass"] for r in records)
    summary = {
        "summary": {
            "family": family,
            "count": len(records),
            "seed": cfg.seed,
            "failures": failures,
            "max_square_defect": max(r["square_defect"] for r in records),
            "max_torsion_residual": max(r["torsion_residual"] for r in records),
            "max_roundtrip_error": max(r["roundtrip_error"] for r in records),
            "tolerance": mcfg.tol,
            "pass": failures == 0,
        }
    }
    return (EXIT_OK if failures == 0 else EXIT_FAIL), records + [summary]


def _chart_verify(cfg: RunConfig):
    family = {LieAlgebraId.u2(): "u2", LieAlgebraId.su2_power(2): "su2su2"}.get(cfg.algebra)
    if family is None:
        raise UsageError("chart-verify supports u2 and su2su2")
    if cfg.xi is None:
        raise UsageError("chart-verify needs --xi")
    if family == "su2su2" and not cfg.eta:
        raise UsageError("chart-verify on su2su2 needs a nonzero --eta")
    ccfg = verify.ChartConfig(
        family,
        float(cfg.xi),
        cfg.eta if family == "su2su2" else None,
        cfg.samples or 1000,
        cfg.seed,
        cfg.tolerance(verify.PDE_TOL),
        method=cfg.method,
    )
    rep = verify.chart_verification(ccfg)
    return (EXIT_OK if rep["pass"] else EXIT_FAIL), rep


def _rep_verify(cfg: RunConfig):
    xi = Fraction(0) if cfg.xi is None else cfg.xi
    rep = verify.representation_report(xi, cfg.pmax, cfg.qmax, cfg.subrep_qmax, cfg.depth)
    return (EXIT_OK if rep["pass"] else EXIT_FAIL), rep


def _extend(cfg: RunConfig):
    alg = LieAlgebraId.u2()
    if cfg.matrix is not None:
        j = cfg.matrix
        if j.shape != (4, 4):
            raise SchemaError("extend expects a 4x4 matrix on u(2)")
    elif cfg.form_a is not None:
        j = form_from_json(alg, cfg.form_a).matrix()
    else:
        raise UsageError("provide --matrix or --form")
    try:
        ext = canonical.extend_u2_structure(j, cfg.nu2)
    except canonical.CanonicalizationError as exc:
        return EXIT_FAIL, _error("not_integrable", str(exc))
    target = LieAlgebraId.su2_power(2)
    rep = is_complex_structure(structure_constants(target), ext, cfg.tolerance(TORSION_TOL))
    form = None
    if rep:
        try:
            form = form_to_json(canonical.canonicalize_su2su2(ext).form)
        except canonical.CanonicalizationError:
            form = None
    return (EXIT_OK if rep else EXIT_FAIL), {
        "source": algebra_to_json(alg),
        "target": algebra_to_json(target),
        "nu2": cfg.nu2,
        "matrix": matrix_to_json(ext),
        "check": rep.to_json(),
        "form": form,
    }


_HANDLERS = {
    "gen-torsion": _gen_torsion,
    "check": _check,
    "canonicalize": _canonicalize,
    "equivalent": _equivalent,
    "sample-manifold": _sample_manifold,
    "chart-verify": _chart_verify,
    "rep-verify": _rep_verify,
    "extend": _extend,
}


def run(cfg: RunConfig):
    """(exit code, report); the report is a list of records for sample-manifold."""
    needs_algebra = cfg.command not in ("rep-verify", "extend")
    if needs_algebra and cfg.algebra is None:
        raise UsageError(f"{cfg.command} needs --algebra")
    return _HANDLERS[cfg.command](cfg)


# ---------------------------------------------------------------------------
# argument parsing


def _read_json(text: str, what: str):
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {what}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {what}: {exc}") from None


def _xi_arg(text: str) -> Fraction:
    try:
        return rational_from_json(text)
    except SchemaError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (default 0)")
    common.add_argument("--samples", type=int, default=argparse.SUPPRESS, help="number of random samples")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="override the command's tolerance")
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="licstruct", description="Complex structures on su(2), u(2) and their products.")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--output", "-o", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, algebra=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if algebra:
            p.add_argument("--algebra", required=True, help="su2, u2, su2su2, u2u2, su2^N or u2^N")
        return p

    p = add("gen-torsion", "emit the torsion equations")
    p.add_argument("--nonzero-only", action="store_true")

    for name, text in (("check", "is the matrix a complex structure"), ("canonicalize", "normal form and witness")):
        p = add(name, text)
        p.add_argument("--matrix", help="JSON matrix, @file or - for stdin")
        p.add_argument("--form", help="JSON canonical-form parameters instead of a matrix")

    p = add("equivalent", "decide equivalence of two normal forms")
    p.add_argument("--a", required=True, help="JSON form parameters")
    p.add_argument("--b", required=True, help="JSON form parameters")

    p = add("sample-manifold", "sample the structure manifold, JSON lines")
    p.add_argument("--count", type=int, help="alias for --samples")

    p = add("chart-verify", "holomorphy and Jacobian checks of the charts", algebra=False)
    p.add_argument("--target", required=True, choices=("u2", "su2su2"))
    p.add_argument("--xi", type=_xi_arg, required=True)
    p.add_argument("--eta", type=float)
    p.add_argument("--method", choices=("mp", "float"), default="mp")

    p = add("rep-verify", "exact operator identities on Laurent monomials", algebra=False)
    p.add_argument("--xi", type=_xi_arg, default=Fraction(0), help="rational such as 1 or -2/3")
    p.add_argument("--pmax", type=int, default=20)
    p.add_argument("--qmax", type=int, default=20)
    p.add_argument("--subrep-qmax", type=int, default=12)
    p.add_argument("--depth", type=int, default=10)

    p = add("extend", "extend a u(2) structure to su(2)+su(2)", algebra=False)
    p.add_argument("--matrix", help="4x4 JSON matrix, @file or - for stdin")
    p.add_argument("--form", help='u(2) normal form, e.g. {"xi": 1}')
    p.add_argument("--nu2", type=int, choices=(1, -1), default=1)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    kw: dict = {"command": args.command, "seed": args.seed, "samples": args.samples, "tol": args.tol}
    if getattr(args, "algebra", None):
        try:
            kw["algebra"] = parse_algebra(args.algebra)
        except SchemaError as exc:
            raise UsageError(str(exc)) from None
    if args.command == "chart-verify":
        kw["algebra"] = parse_algebra(args.target)
        kw.update(xi=args.xi, eta=args.eta, method=args.method)
    if args.command == "sample-manifold" and args.count is not None:
        kw["samples"] = args.count
    if getattr(args, "matrix", None):
        kw["matrix"] = matrix_from_json(_read_json(args.matrix, "--matrix"))
    if getattr(args, "form", None):
        kw["form_a"] = _read_json(args.form, "--form")
    if args.command == "equivalent":
        kw["form_a"] = _read_json(args.a, "--a")
        kw["form_b"] = _read_json(args.b, "--b")
    if args.command == "rep-verify":
        kw.update(xi=args.xi, pmax=args.pmax, qmax=args.qmax, subrep_qmax=args.subrep_qmax, depth=args.depth)
    if args.command == "extend":
        kw["nu2"] = args.nu2
    if args.command == "gen-torsion":
        kw["nonzero_only"] = args.nonzero_only
    return RunConfig(**kw)


def render(report) -> str:
    if isinstance(report, list):
        return "".join(dumps(r, indent=None) + "\n" for r in report)
    return dumps(report) + "\n"


_VALUE_FLAGS = ("--xi", "--eta", "--tol")


def _glue_negative_values(argv):
    """Turn ``--xi -2/3`` into ``--xi=-2/3`` so argparse does not read it as a flag."""
    out = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt[:1] == "-" and nxt[1:2].isdigit():
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        code, report = run(cfg)
    except (UsageError, SchemaError) as exc:
        print(f"licstruct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
