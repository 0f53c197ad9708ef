"""Torsion equations of linear maps J on a Lie algebra, and integrability checks.

The torsion equation ``ij|k`` is the e_k-coordinate of

    J[J e_i, e_j] + J[e_i, J e_j] + [e_i, e_j] - [J e_i, J e_j]

i.e. minus the usual Nijenhuis expression.  This overall sign is the one under
which the printed su(2) equation 12|3 reads
``xi_1_2*xi_2_1 - xi_2_2*xi_1_1 - ... + 1``.  Polynomials are exact; the
numeric checks use double precision with tolerance ``TORSION_TOL``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lie_core import StructureConstants, bracket, bracket_table
from .polynomial import Polynomial

TORSION_TOL = 1e-9

# emitted = EQUATION_SIGN * (e_k-coordinate of [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY])
EQUATION_SIGN = Fraction(-1)


def xi_name(i: int, j: int) -> str:
    """Variable name of the (row i, column j) entry, 1-based."""
    return f"xi_{i}_{j}"


def xi_variables(n: int) -> tuple[str, ...]:
    return tuple(xi_name(i, j) for i in range(1, n + 1) for j in range(1, n + 1))


@dataclass(frozen=True)
class TorsionEquation:
    label: tuple[int, int, int]  # 1-based (i, j, k), i < j
    poly: Polynomial = field(compare=False)
    scale: Fraction = EQUATION_SIGN  # poly = scale * (Nijenhuis e_k-coordinate)

    def __str__(self):
        i, j, k = self.label
        return f"{i}{j}|{k}: {self.poly} = 0"


def symbolic_matrix(n: int) -> list[list[Polynomial]]:
    variables = xi_variables(n)
    return [[Polynomial.variable(variables, xi_name(i + 1, j + 1)) for j in range(n)] for i in range(n)]


def _poly_bracket(nonzero, n, variables, u, v):
    out = [Polynomial.zero(variables) for _ in range(n)]
    for k, a, b, val in nonzero:
        if u[a] and v[b]:
            out[k] = out[k] + (u[a] * v[b]) * val
    return out


def _poly_apply(jsym, v):
    n = len(jsym)
    out = []
    for k in range(n):
        acc = None
        for m in range(n):
            if v[m] and jsym[k][m]:
                t = jsym[k][m] * v[m]
                acc = t if acc is None else acc + t
        out.append(acc if acc is not None else Polynomial.zero(v[0].variables))
    return out


def torsion_polynomials(sc: StructureConstants, jsym) -> dict[tuple[int, int, int], Polynomial]:
    """Torsion equations for an arbitrary symbolic matrix (list of rows of Polynomials)."""
    n = sc.dim
    variables = jsym[0][0].variables
    nonzero = sc.nonzero()
    zero = Polynomial.zero(variables)
    one = Polynomial.constant(variables, 1)
    basis = [[one if m == i else zero for m in range(n)] for i in range(n)]
    cols = [[jsym[r][i] for r in range(n)] for i in range(n)]
    out = {}
    for i, j in itertools.combinations(range(n), 2):
        jj = _poly_bracket(nonzero, n, variables, cols[i], cols[j])
        xx = _poly_bracket(nonzero, n, variables, basis[i], basis[j])
        a = _poly_bracket(nonzero, n, variables, cols[i], basis[j])
        b = _poly_bracket(nonzero, n, variables, basis[i], cols[j])
        jab = _poly_apply(jsym, [p + q for p, q in zip(a, b)])
        for k in range(n):
            nij = jj[k] - xx[k] - jab[k]
            out[(i + 1, j + 1, k + 1)] = nij * EQUATION_SIGN
    return out


def torsion_equations(sc: StructureConstants) -> list[TorsionEquation]:
    """All n * n(n-1)/2 equations ij|k, zero polynomials included, ordered by (i, j, k)."""
    polys = torsion_polynomials(sc, symbolic_matrix(sc.dim))
    out = []
    for label in sorted(polys):
        poly, clear = polys[label].clear_denominators()
        out.append(TorsionEquation(label, poly, EQUATION_SIGN * clear))
    return out


# ---------------------------------------------------------------------------
# numerics


@dataclass(frozen=True)
class TorsionResiduals:
    values: np.ndarray = field(repr=False)  # values[k, i, j], emitted sign convention

    @property
    def max_abs(self) -> float:
        return float(np.abs(self.values).max()) if self.values.size else 0.0

    def __getitem__(self, label):
        i, j, k = label
        return float(self.values[k - 1, i - 1, j - 1])

    def as_dict(self) -> dict[tuple[int, int, int], float]:
        n = self.values.shape[0]
        return {
            (i + 1, j + 1, k + 1): float(self.values[k, i, j])
            for i, j in itertools.combinations(range(n), 2)
            for k in range(n)
        }


def nijenhuis_tensor(sc: StructureConstants, j) -> np.ndarray:
    """N[k, i, j] = e_k-coordinate of [Je_i, Je_j] - [e_i, e_j] - J[Je_i, e_j] - J[e_i, Je_j]."""
    j = np.asarray(j)
    c = sc.array
    first = bracket_table(sc, j)
    a = np.einsum("maj,ai->mij", c, j)
    b = np.einsum("mib,bj->mij", c, j)
    return first - c - np.einsum("km,mij->kij", j, a + b)


def evaluate_torsion(sc: StructureConstants, j) -> TorsionResiduals:
    j = np.asarray(j, dtype=float)
    if j.shape != (sc.dim, sc.dim):
        raise ValueError(f"expected a {sc.dim}x{sc.dim} matrix, got {j.shape}")
    return TorsionResiduals(float(EQUATION_SIGN) * nijenhuis_tensor(sc, j))


@dataclass(frozen=True)
class ComplexStructureReport:
    ok: bool
    square_defect: float  # max |J^2 + I|
    torsion: float  # max torsion residual
    tol: float

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "is_complex_structure": self.ok,
            "square_defect": self.square_defect,
            "torsion_residual": self.torsion,
            "tolerance": self.tol,
        }


def is_complex_structure(sc: StructureConstants, j, tol: float = TORSION_TOL) -> ComplexStructureReport:
    j = np.asarray(j, dtype=float)
    if j.shape != (sc.dim, sc.dim):
        raise ValueError(f"expected a {sc.dim}x{sc.dim} matrix, got {j.shape}")
    sq = float(np.abs(j @ j + np.eye(sc.dim)).max())
    tor = evaluate_torsion(sc, j).max_abs
    return ComplexStructureReport(sq <= tol and tor <= tol, sq, tor, tol)


# ---------------------------------------------------------------------------
# the (1,0)-subalgebra


@dataclass(frozen=True)
class HolomorphicSubalgebra:
    basis: np.ndarray  # columns x_k - i J x_k, k in ``indices``
    indices: tuple[int, ...]  # 0-based generating basis vectors
    brackets: np.ndarray  # brackets[c, a, b]: coefficient of basis[:, c] in [basis a, basis b]
    defect: float  # largest component of [m, m] outside m

    @property
    def abelian(self) -> bool:
        return bool(np.abs(self.brackets).max() <= TORSION_TOL) if self.brackets.size else True


def holomorphic_subalgebra(sc: StructureConstants, j, tol: float = TORSION_TOL) -> HolomorphicSubalgebra:
    j = np.asarray(j, dtype=float)
    n = sc.dim
    if j.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix")
    if np.abs(j @ j + np.eye(n)).max() > tol:
        raise ValueError("J^2 != -I: not an almost complex structure")
    vecs = np.eye(n) - 1j * j  # column k is x_k - i J x_k
    chosen: list[int] = []
    for k in range(n):
        trial = vecs[:, chosen + [k]]
        if np.linalg.matrix_rank(trial, tol=1e-8) == len(chosen) + 1:
            chosen.append(k)
        if len(chosen) == n // 2:
            break
    z = vecs[:, chosen]
    r = len(chosen)
    coeffs = np.zeros((r, r, r), dtype=complex)
    defect = 0.0
    for a, b in itertools.combinations(range(r), 2):
        w = bracket(sc, z[:, a], z[:, b])
        sol, *_ = np.linalg.lstsq(z, w, rcond=None)
        defect = max(defect, float(np.linalg.norm(w - z @ sol)))
        coeffs[:, a, b] = sol
        coeffs[:, b, a] = -sol
    return HolomorphicSubalgebra(z, tuple(chosen), coeffs, defect)


# ---------------------------------------------------------------------------
# product algebras


@dataclass(frozen=True)
class ProductConditionReport:
    diagonal_torsion: tuple[float, ...]  # max torsion of each diagonal block
    off_diagonal: float  # max defect of [pi X, pi Y] = pi[JX, Y] + pi[X, JY]

    def holds(self, tol: float = TORSION_TOL) -> bool:
        return max(self.diagonal_torsion, default=0.0) <= tol and self.off_diagonal <= tol


def product_conditions(sc: StructureConstants, factor_blocks, j) -> ProductConditionReport:
    """Necessary conditions on a zero-torsion J over a direct sum.

    ``factor_blocks`` lists the index sets of the factors.  For each factor the
    diagonal block must have zero torsion on that factor; for i != j the map
    pi_ij = P_i J P_j must satisfy [pi X, pi Y] = pi[JX, Y] + pi[X, JY] for X, Y
    in factor j.
    """
    j = np.asarray(j, dtype=float)
    n = sc.dim
    diag = []
    projections = []
    for idx in factor_blocks:
        p = np.zeros((n, n))
        p[idx, idx] = 1.0
        projections.append(p)
        sub = _sub_constants(sc, idx)
        diag.append(evaluate_torsion(sub, j[np.ix_(idx, idx)]).max_abs)
    off = 0.0
    for a, b in itertools.permutations(range(len(factor_blocks)), 2):
        pi = projections[a] @ j @ projections[b]
        for x, y in itertools.combinations(factor_blocks[b], 2):
            ex, ey = np.eye(n)[x], np.eye(n)[y]
            lhs = bracket(sc, pi @ ex, pi @ ey)
            rhs = pi @ bracket(sc, j @ ex, ey) + pi @ bracket(sc, ex, j @ ey)
            off = max(off, float(np.abs(lhs - rhs).max()))
    return ProductConditionReport(tuple(diag), off)


def _sub_constants(sc: StructureConstants, idx) -> StructureConstants:
    c = tuple(tuple(tuple(sc.c[k][i][j] for j in idx) for i in idx) for k in idx)
    return StructureConstants(len(idx), c)


# ---------------------------------------------------------------------------
# staged elimination report


@dataclass(frozen=True)
class CramerSystem:
    labels: tuple  # the two equation labels
    unknowns: tuple[str, str]
    matrix: tuple  # 2x2 of Polynomials in the remaining variables
    determinant: Polynomial
    forces_zero: bool  # determinant has no real zero (sum of squares plus a positive constant)


def cramer_report(equations: dict, unknowns_pool=None) -> list[CramerSystem]:
    """Find pairs of equations that are homogeneous linear in the same two unknowns.

    ``equations`` maps labels to polynomials (typically torsion equations after
    substituting a partial normal form).  Each detected 2x2 system
    ``A (u, v)^T = 0`` is reported with its determinant; when that determinant
    is 1 + sum of squares the only solution is u = v = 0.
    """
    items = [(lab, p) for lab, p in sorted(equations.items()) if not p.is_zero()]
    found = []
    seen = set()
    for lab, p in items:
        if p.degree() != 2:
            continue
        pair = _homogeneous_linear_pair(p, unknowns_pool)
        if pair is None:
            continue
        for lab2, q in items:
            if lab2 <= lab or (lab, lab2) in seen:
                continue
            if _homogeneous_linear_pair(q, unknowns_pool, pair) is None:
                continue
            u, v = pair
            m = ((p.coefficient(u), p.coefficient(v)), (q.coefficient(u), q.coefficient(v)))
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
            if det.is_zero():
                continue
            seen.add((lab, lab2))
            found.append(CramerSystem((lab, lab2), pair, m, det, _is_positive_definite(det)))
    return found


def _homogeneous_linear_pair(p: Polynomial, pool=None, want=None):
    """If p = a*u + b*v with a, b free of u, v, return (u, v)."""
    names = p.variables
    candidates = [want] if want else None
    if candidates is None:
        used = p.used_variables()
        if pool is not None:
            used = [v for v in used if v in pool]
        candidates = list(itertools.combinations(used, 2))
    for u, v in candidates:
        iu, iv = names.index(u), names.index(v)
        ok = True
        for mon in p.terms:
            if mon[iu] + mon[iv] != 1:
                ok = False
                break
        if ok:
            return (u, v)
    return None


def _is_positive_definite(det: Polynomial) -> bool:
    """Sufficient test: constant term > 0 and every other term an even square with positive coefficient."""
    const = (0,) * len(det.variables)
    if det.terms.get(const, 0) <= 0:
        return False
    return all(
        c > 0 and sum(1 for e in mon if e) == 1 and all(e % 2 == 0 for e in mon)
        for mon, c in det.terms.items()
        if mon != const
    )


# ---------------------------------------------------------------------------
# CR structures on su(2)

EXTENSION_VARIABLES = ("xi_1_3", "xi_2_3", "xi_3_3")


@dataclass(frozen=True)
class CRStructureData:
    """A plane p of su(2) spanned by ``subspace`` and a complex structure jp on it.

    ``jp`` is expressed in the spanning vectors: column k is the image of
    subspace[k].  Entries may be ints, Fractions or floats; floats are taken as
    the exact binary rationals they represent.
    """

    subspace: tuple
    jp: tuple

    def __post_init__(self):
        sub = tuple(tuple(_exact(x) for x in v) for v in self.subspace)
        jp = tuple(tuple(_exact(x) for x in row) for row in self.jp)
        object.__setattr__(self, "subspace", sub)
        object.__setattr__(self, "jp", jp)
        r = len(sub)
        if len(jp) != r or any(len(row) != r for row in jp):
            raise ValueError("jp must be square of the subspace dimension")
        vecs = np.array(sub, dtype=float)
        if np.linalg.matrix_rank(vecs, tol=1e-10) != r:
            raise ValueError("subspace vectors must be linearly independent")
        m = np.array(jp, dtype=float)
        if np.abs(m @ m + np.eye(r)).max() > 1e-10:
            raise ValueError("jp^2 != -I on the span")


def _exact(x) -> Fraction:
    return Fraction(x) if not isinstance(x, Fraction) else x


@dataclass(frozen=True)
class ExtensionReport:
    basis: tuple  # adapted basis (v1, v2, w) in which the extension has free third column
    constraints: tuple  # nonzero torsion polynomials in EXTENSION_VARIABLES
    real_solutions: tuple  # each a dict name -> str of the solved value; missing names are free
    torsion_free_exists: bool


@dataclass(frozen=True)
class CRReport:
    ok: bool
    defect: float  # component of [m, m] outside m, together with the A/B identity
    extension: ExtensionReport

    def __bool__(self):
        return self.ok


def check_cr_structure(sc: StructureConstants, cr: CRStructureData) -> CRReport:
    """Integrability of a plane CR structure on su(2) and its torsion-free extensions.

    Writing X, Y for the spanning vectors, the CR condition is that
    A = [X, Y] - [JX, JY] lies in p and [JX, Y] + [X, JY] = J_p A.  Extensions
    J with J|p = J_p are parametrized by their third column in the basis
    (v1, v2, w), w the first standard vector completing the basis; the
    torsion equations restricted to that family are solved over the reals.
    """
    if sc.dim != 3:
        raise ValueError("CR check is implemented for su(2)")
    if len(cr.subspace) != 2:
        raise ValueError("p must be two-dimensional")
    v = np.array(cr.subspace, dtype=float).T
    jp = np.array(cr.jp, dtype=float)
    x, y = v[:, 0], v[:, 1]
    jx, jy = v @ jp[:, 0], v @ jp[:, 1]
    a = bracket(sc, x, y) - bracket(sc, jx, jy)
    b = bracket(sc, jx, y) + bracket(sc, x, jy)
    coords, *_ = np.linalg.lstsq(v, a, rcond=None)
    outside = float(np.linalg.norm(a - v @ coords))
    mismatch = float(np.linalg.norm(b - v @ (jp @ coords)))
    defect = max(outside, mismatch)
    return CRReport(defect <= TORSION_TOL, defect, _extension_report(sc, cr))


def _extension_report(sc: StructureConstants, cr: CRStructureData) -> ExtensionReport:
    import sympy as sp

    v1, v2 = cr.subspace
    w = None
    for k in (2, 0, 1):
        cand = tuple(Fraction(int(i == k)) for i in range(3))
        if sp.Matrix([v1, v2, cand]).det() != 0:
            w = cand
            break
    basis = sp.Matrix([v1, v2, w]).T
    inv = basis.inv()
    names = EXTENSION_VARIABLES
    x, y, z = (Polynomial.variable(names, n) for n in names)
    one = Polynomial.constant(names, 1)
    zero = Polynomial.zero(names)
    e = [
        [one * cr.jp[0][0], one * cr.jp[0][1], x],
        [one * cr.jp[1][0], one * cr.jp[1][1], y],
        [zero, zero, z],
    ]
    jsym = [
        [
            sum(
                (e[a][b] * Fraction(str(basis[i, a])) * Fraction(str(inv[b, j])) for a in range(3) for b in range(3)),
                zero,
            )
            for j in range(3)
        ]
        for i in range(3)
    ]
    polys = {lab: p.normalized() for lab, p in torsion_polynomials(sc, jsym).items() if p}
    uniq = tuple(sorted(set(polys.values()), key=str))
    syms = sp.symbols(names, real=True)
    exprs = [sp.sympify(str(p).replace("^", "**"), locals=dict(zip(names, syms))) for p in uniq]
    sols = sp.solve(exprs, syms, dict=True) if exprs else [{}]
    real = []
    for sol in sols:
        if all(sp.simplify(sp.im(val)) == 0 for val in sol.values()):
            real.append({str(k): str(val) for k, val in sorted(sol.items(), key=lambda kv: str(kv[0]))})
    return ExtensionReport(
        tuple(tuple(str(t) for t in col) for col in (v1, v2, w)),
        uniq,
        tuple(real),
        bool(real),
    )
