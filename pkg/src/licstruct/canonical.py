"""Normal forms of torsion-free maps and complex structures, and equivalence tests.

Every canonicalization returns the normal form together with an automorphism
W such that W^-1 J W is the normal-form matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .lie_core import (
    Automorphism,
    LieAlgebraId,
    assemble_automorphism,
    permutation_matrix,
    quaternion_to_rotation,
    structure_constants,
)
from .manifold import OffManifoldError, hopf_lift, u2_matrix_to_point
from .torsion import TORSION_TOL, evaluate_torsion, is_complex_structure

RESIDUAL_TOL = 1e-8
EQUIV_TOL = 1e-9
SQUARE_TOL = 1e-9

_ROT_BLOCK = np.array([[0.0, 1.0], [-1.0, 0.0]])
# the allowed sign flip diag([[0, 1], [1, 0]], -1), an element of SO(3)
_FLIP = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])


class CanonicalizationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class Su2TorsionFree:
    xi33: float
    tag = "Su2TorsionFree"

    def matrix(self) -> np.ndarray:
        return np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, self.xi33]])

    def params(self) -> dict:
        return {"xi33": self.xi33}


@dataclass(frozen=True)
class U2Form:
    xi: float
    tag = "U2"

    def matrix(self) -> np.ndarray:
        return u2_normal_form(self.xi)

    def params(self) -> dict:
        return {"xi": self.xi}


@dataclass(frozen=True)
class Su2Su2Form:
    xi: float
    eta: float
    tag = "Su2Su2"

    def __post_init__(self):
        if self.eta == 0:
            raise ValueError("eta must be nonzero")

    def matrix(self) -> np.ndarray:
        return su2su2_normal_form(self.xi, self.eta)

    def flipped(self) -> Su2Su2Form:
        """Image under the factor switch."""
        return Su2Su2Form(-self.xi, -(1 + self.xi**2) / self.eta)

    def params(self) -> dict:
        return {"xi": self.xi, "eta": self.eta}


@dataclass(frozen=True, eq=False)
class Su2NForm:
    m: np.ndarray
    tag = "Su2N"

    def __post_init__(self):
        m = np.atleast_2d(np.asarray(self.m, dtype=float))
        if m.shape[0] != m.shape[1]:
            raise ValueError("M must be square")
        object.__setattr__(self, "m", m)

    def matrix(self) -> np.ndarray:
        return su2n_block_form(self.m)

    def params(self) -> dict:
        return {"M": self.m.tolist()}


@dataclass(frozen=True, eq=False)
class U2NForm:
    m: np.ndarray
    tag = "U2N"

    def __post_init__(self):
        m = np.atleast_2d(np.asarray(self.m, dtype=float))
        if m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError("M must be square of even size")
        if np.abs(m @ m + np.eye(m.shape[0])).max() > SQUARE_TOL:
            raise ValueError("M^2 != -I")
        object.__setattr__(self, "m", m)

    def matrix(self) -> np.ndarray:
        return u2n_block_form(self.m)

    def params(self) -> dict:
        return {"M": self.m.tolist()}


CanonicalForm = Union[Su2TorsionFree, U2Form, Su2Su2Form, Su2NForm, U2NForm]


def u2_normal_form(xi: float) -> np.ndarray:
    return np.array(
        [
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, xi, 1.0],
            [0.0, 0.0, -(1 + xi * xi), -xi],
        ]
    )


def su2su2_normal_form(xi: float, eta: float) -> np.ndarray:
    j = np.zeros((6, 6))
    j[:2, :2] = _ROT_BLOCK
    j[3:5, 3:5] = _ROT_BLOCK
    j[2, 2], j[2, 5] = xi, eta
    j[5, 2], j[5, 5] = -(1 + xi * xi) / eta, -xi
    return j


def su2n_block_form(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    j = np.zeros((3 * n, 3 * n))
    for i in range(n):
        j[3 * i:3 * i + 2, 3 * i:3 * i + 2] = _ROT_BLOCK
    idx = [3 * i + 2 for i in range(n)]
    j[np.ix_(idx, idx)] = m
    return j


def u2n_block_form(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    n = m.shape[0] // 2
    j = np.zeros((4 * n, 4 * n))
    for i in range(n):
        j[4 * i:4 * i + 2, 4 * i:4 * i + 2] = _ROT_BLOCK
    idx = _u2n_m_indices(n)
    j[np.ix_(idx, idx)] = m
    return j


def _u2n_m_indices(n: int) -> list[int]:
    return [k for i in range(n) for k in (4 * i + 2, 4 * i + 3)]


@dataclass(frozen=True)
class CanonicalizationResult:
    form: CanonicalForm
    witness: Automorphism | None  # None only for the bare 3x3 torsion-free case
    witness_matrix: np.ndarray
    residual: float

    def __post_init__(self):
        if self.residual > RESIDUAL_TOL:
            raise CanonicalizationError(f"witness residual {self.residual:.3e} exceeds {RESIDUAL_TOL}")


def _residual(j, w, target) -> float:
    return float(np.abs(np.linalg.solve(w, j @ w) - target).max())


# ---------------------------------------------------------------------------
# 3x3 reduction


def real_eigenvalue(a) -> float:
    """A real root of det(lambda I - a) for a real 3x3 matrix.

    Trigonometric or hyperbolic form of the cubic formula, polished by Newton
    steps; bisection if the closed form misbehaves.  With three real roots the
    one of largest modulus is returned.
    """
    a = np.asarray(a, dtype=float)
    size = float(np.abs(a).max())
    if size == 0.0:
        return 0.0
    return size * _unit_real_eigenvalue(a / size)


def _unit_real_eigenvalue(a) -> float:
    tr = float(np.trace(a))
    m2 = float((np.trace(a) ** 2 - np.trace(a @ a)) / 2)
    det = float(np.linalg.det(a))
    # lambda^3 + b lambda^2 + c lambda + d
    b, c, d = -tr, m2, -det

    def f(x):
        return ((x + b) * x + c) * x + d

    def df(x):
        return (3 * x + 2 * b) * x + c

    shift = -b / 3
    p = c - b * b / 3
    q = 2 * b**3 / 27 - b * c / 3 + d
    if abs(p) < 1e-300:
        roots = [shift + math.copysign(abs(q) ** (1 / 3), -q)]
    elif p < 0:
        r = 2 * math.sqrt(-p / 3)
        arg = 3 * q / (p * r)
        if abs(arg) <= 1:
            phi = math.acos(arg) / 3
            roots = [shift + r * math.cos(phi - 2 * math.pi * k / 3) for k in range(3)]
        else:
            sgn = 1.0 if arg > 0 else -1.0
            roots = [shift + sgn * r * math.cosh(math.acosh(abs(arg)) / 3)]
    else:
        r = 2 * math.sqrt(p / 3)
        roots = [shift - r * math.sinh(math.asinh(3 * q / (p * r)) / 3)]
    x = max(roots, key=abs)
    for _ in range(4):
        g = df(x)
        if g == 0:
            break
        step = f(x) / g
        x -= step
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    scale = 1.0 + abs(b) + abs(c) + abs(d)
    if math.isfinite(x) and abs(f(x)) <= 1e-10 * scale:
        return x
    return _bisect_root(f, scale)


def _bisect_root(f, bound: float) -> float:
    lo, hi = -bound, bound
    if f(lo) > 0 or f(hi) < 0:
        raise CanonicalizationError("no real eigenvalue found")
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _null_vector(a) -> np.ndarray:
    """Unit vector spanning the kernel of a rank-2 3x3 matrix."""
    rows = sorted(a, key=lambda r: -np.linalg.norm(r))
    best = max(
        (np.cross(r1, r2) for r1, r2 in itertools.combinations(rows, 2)),
        key=np.linalg.norm,
    )
    norm = np.linalg.norm(best)
    scale = max(np.linalg.norm(rows[0]) ** 2, 1e-300)
    if norm <= 1e-6 * scale:
        best = np.linalg.svd(a)[2][-1]
        norm = np.linalg.norm(best)
    return best / norm


def _su2_frame(a) -> tuple[np.ndarray, float]:
    """(R, lambda) with R in SO(3) and R^T a R = [[0, 1, 0], [-1, 0, 0], [0, 0, lambda]] up to round-off."""
    a = np.asarray(a, dtype=float)
    lam = real_eigenvalue(a)
    f3 = _null_vector(a - lam * np.eye(3))
    if f3[np.argmax(np.abs(f3))] < 0:
        f3 = -f3
    f1 = None
    for e in np.eye(3):
        v = e - (e @ f3) * f3
        if np.linalg.norm(v) > 0.5:
            f1 = v / np.linalg.norm(v)
            break
    f2 = np.cross(f3, f1)
    r = np.column_stack([f1, f2, f3])
    if (r.T @ a @ r)[0, 1] < 0:
        r = r @ _FLIP
    return r, lam


def canonicalize_su2_torsion_free(j, tol: float = TORSION_TOL) -> CanonicalizationResult:
    j = np.asarray(j, dtype=float)
    if j.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    res = evaluate_torsion(structure_constants(LieAlgebraId.su2()), j).max_abs
    if res > tol:
        raise CanonicalizationError(f"torsion residual {res:.3e} is nonzero")
    r, _ = _su2_frame(j)
    reduced = r.T @ j @ r
    form = Su2TorsionFree(float(reduced[2, 2]))
    aut = Automorphism(LieAlgebraId.su2(), (r,))
    return CanonicalizationResult(form, aut, r, _residual(j, r, form.matrix()))


# ---------------------------------------------------------------------------
# u(2)


def _require_structure(alg: LieAlgebraId, j: np.ndarray, name: str) -> None:
    """OffManifoldError when J^2 != -I, CanonicalizationError when only the torsion fails."""
    rep = is_complex_structure(structure_constants(alg), j)
    if rep.square_defect > rep.tol:
        raise OffManifoldError(f"J^2 != -I on {name}", rep.square_defect)
    if not rep:
        raise CanonicalizationError(f"almost complex structure on {name} has torsion {rep.torsion:.3e}")


def canonicalize_u2(j) -> CanonicalizationResult:
    """Witness diag(R, c): R lifts the unit vector c*(a14, a24, a34) through the Hopf map."""
    j = np.asarray(j, dtype=float)
    alg = LieAlgebraId.u2()
    if j.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    _require_structure(alg, j, "u(2)")
    p = u2_matrix_to_point(j)
    c = p.c
    t = c * np.array(p.a)
    r = quaternion_to_rotation(hopf_lift(t / np.linalg.norm(t)), tol=1e-10)
    aut = Automorphism(alg, (r,), np.array([[c]]))
    w = assemble_automorphism(aut)
    form = U2Form(p.xi)
    return CanonicalizationResult(form, aut, w, _residual(j, w, form.matrix()))


# ---------------------------------------------------------------------------
# su(2) + su(2) and the block families


def canonicalize_su2su2(j) -> CanonicalizationResult:
    j = np.asarray(j, dtype=float)
    alg = LieAlgebraId.su2_power(2)
    if j.shape != (6, 6):
        raise ValueError("expected a 6x6 matrix")
    _require_structure(alg, j, "su(2)+su(2)")
    r1, _ = _su2_frame(j[:3, :3])
    r2, _ = _su2_frame(j[3:, 3:])
    aut = Automorphism(alg, (r1, r2))
    w = assemble_automorphism(aut)
    reduced = w.T @ j @ w
    form = Su2Su2Form(float(reduced[2, 2]), float(reduced[2, 5]))
    return CanonicalizationResult(form, aut, w, _residual(j, w, form.matrix()))


def canonicalize_blockform(alg: LieAlgebraId, j, *, complex_structure: bool | None = None) -> CanonicalizationResult:
    """Per-factor reduction of a zero-torsion map on su(2)^N or u(2)^N.

    On u(2)^N the normal form only exists as a U2NForm when M^2 = -I; for bare
    torsion-free maps there use :func:`reduce_blockform`.  On su(2)^N the check
    M^2 = -I is applied when ``complex_structure`` is true (default: when
    J^2 = -I).
    """
    j = np.asarray(j, dtype=float)
    if j.shape != (alg.dim, alg.dim):
        raise ValueError(f"expected a {alg.dim}x{alg.dim} matrix")
    sc = structure_constants(alg)
    if complex_structure is None:
        complex_structure = alg.has_center or np.abs(j @ j + np.eye(alg.dim)).max() <= SQUARE_TOL
    res = evaluate_torsion(sc, j).max_abs
    if res > TORSION_TOL:
        raise CanonicalizationError(f"torsion residual {res:.3e} is nonzero")
    m, aut, w, reduced = reduce_blockform(alg, j)
    form = U2NForm(m) if alg.has_center else Su2NForm(m)
    if complex_structure and np.abs(m @ m + np.eye(m.shape[0])).max() > SQUARE_TOL:
        raise CanonicalizationError("M^2 != -I")
    target = form.matrix()
    coupling = float(np.abs(reduced - target).max())
    if coupling > RESIDUAL_TOL:
        raise CanonicalizationError(f"residual block coupling {coupling:.3e}")
    return CanonicalizationResult(form, aut, w, _residual(j, w, target))


def reduce_blockform(alg: LieAlgebraId, j):
    """(M, witness, witness matrix, W^-1 J W) from per-factor rotations."""
    if alg.tag not in ("Su2PowerN", "U2PowerN", "Su2", "U2"):
        raise ValueError(alg.tag)
    rots = []
    for f in range(alg.n):
        idx = alg.su2_indices(f)
        r, _ = _su2_frame(j[np.ix_(idx, idx)])
        rots.append(r)
    aut = Automorphism(alg, tuple(rots))
    w = assemble_automorphism(aut)
    reduced = w.T @ j @ w
    idx = _u2n_m_indices(alg.n) if alg.has_center else [3 * i + 2 for i in range(alg.n)]
    return reduced[np.ix_(idx, idx)], aut, w, reduced


# ---------------------------------------------------------------------------
# equivalence


@dataclass(frozen=True)
class EquivalenceResult:
    status: str  # "equivalent" | "not_equivalent" | "inconclusive"
    witness: Automorphism | None = None
    residual: float | None = None
    detail: str = ""

    def __bool__(self):
        return self.status == "equivalent"


def _check_tag(alg: LieAlgebraId, *forms):
    expected = {"U2": "U2", "Su2PowerN": "Su2N", "U2PowerN": "U2N"}.get(alg.tag)
    if alg == LieAlgebraId.su2_power(2) and all(f.tag == "Su2Su2" for f in forms):
        return "Su2Su2"
    if alg.tag == "Su2":
        expected = "Su2TorsionFree"
    if expected is None or any(f.tag != expected for f in forms):
        raise ValueError(f"form tags {[f.tag for f in forms]} do not match algebra {alg.tag}")
    return expected


def equivalent(alg: LieAlgebraId, a: CanonicalForm, b: CanonicalForm, *, tol: float = EQUIV_TOL, rng=None) -> EquivalenceResult:
    """Decide whether W a W^-1 = b for some automorphism W and return W."""
    kind = _check_tag(alg, a, b)
    if kind in ("U2", "Su2TorsionFree"):
        x, y = (a.xi, b.xi) if kind == "U2" else (a.xi33, b.xi33)
        if abs(x - y) <= tol:
            ident = Automorphism(alg, (np.eye(3),))
            return EquivalenceResult("equivalent", ident, 0.0)
        return EquivalenceResult("not_equivalent", detail="invariant xi differs")
    if kind == "Su2Su2":
        return _equivalent_su2su2(alg, a, b, tol)
    if kind == "Su2N":
        return _equivalent_su2n(alg, a, b, tol)
    return _equivalent_u2n(alg, a, b, tol, rng)


def _verified(alg, aut, a, b) -> float:
    w = assemble_automorphism(aut)
    return float(np.abs(w @ a.matrix() @ np.linalg.inv(w) - b.matrix()).max())


def _equivalent_su2su2(alg, a: Su2Su2Form, b: Su2Su2Form, tol) -> EquivalenceResult:
    rots = (np.eye(3), np.eye(3))
    if abs(a.xi - b.xi) <= tol and abs(a.eta - b.eta) <= tol:
        aut = Automorphism(alg, rots)
        return EquivalenceResult("equivalent", aut, _verified(alg, aut, a, b))
    f = a.flipped()
    if abs(f.xi - b.xi) <= tol and abs(f.eta - b.eta) <= tol * max(1.0, abs(b.eta)):
        aut = Automorphism(alg, rots, perm=(1, 0))
        return EquivalenceResult("equivalent", aut, _verified(alg, aut, a, b))
    return EquivalenceResult("not_equivalent", detail="neither (xi, eta) nor its switch image matches")


def _equivalent_su2n(alg, a: Su2NForm, b: Su2NForm, tol) -> EquivalenceResult:
    n = alg.n
    if n > 6:
        raise ValueError("permutation search is limited to N <= 6")
    if a.m.shape != (n, n) or b.m.shape != (n, n):
        raise ValueError("M has the wrong size")
    for perm in itertools.permutations(range(n)):
        p = permutation_matrix(perm)
        if np.abs(p @ a.m @ p.T - b.m).max() <= tol:
            aut = Automorphism(alg, tuple(np.eye(3) for _ in range(n)), perm=perm)
            return EquivalenceResult("equivalent", aut, _verified(alg, aut, a, b))
    return EquivalenceResult("not_equivalent", detail="no factor permutation conjugates M to M'")


def _g_matrix(b) -> np.ndarray:
    n = b.shape[0]
    g = np.zeros((2 * n, 2 * n))
    for i in range(n):
        g[2 * i, 2 * i] = 1.0
    g[1::2, 1::2] = b
    return g


def solve_g_conjugacy(m, m2, tol: float = EQUIV_TOL, rng=None, trials: int = 100):
    """Look for G of the center-mixing shape with m2 G = G m and det G != 0.

    Returns (status, b) where status is "solution", "no_solution" or
    "singular_only" (a nonzero affine solution space with no invertible
    member among the tried combinations).
    """
    m = np.asarray(m, dtype=float)
    m2 = np.asarray(m2, dtype=float)
    n = m.shape[0] // 2
    base = _g_matrix(np.zeros((n, n)))
    const = (m2 @ base - base @ m).ravel()
    cols = []
    for i, k in itertools.product(range(n), repeat=2):
        e = np.zeros((2 * n, 2 * n))
        e[2 * i + 1, 2 * k + 1] = 1.0
        cols.append((m2 @ e - e @ m).ravel())
    a = np.column_stack(cols)
    x0, *_ = np.linalg.lstsq(a, -const, rcond=None)
    scale = 1.0 + np.abs(m).max() + np.abs(m2).max()
    if np.abs(a @ x0 + const).max() > tol * scale:
        return "no_solution", None
    _, sv, vt = np.linalg.svd(a)
    rank = int((sv > 1e-10 * max(sv[0], 1.0)).sum())
    null = vt[rank:]
    candidates = [x0]
    if len(null):
        rng = rng if rng is not None else np.random.default_rng(0)
        candidates += [x0 + rng.integers(-3, 4, size=len(null)) @ null for _ in range(trials)]
    for x in candidates:
        b = x.reshape(n, n)
        if abs(np.linalg.det(b)) > 1e-8:
            return "solution", b
    return "singular_only", None


def _equivalent_u2n(alg, a: U2NForm, b: U2NForm, tol, rng) -> EquivalenceResult:
    n = alg.n
    if a.m.shape != (2 * n, 2 * n) or b.m.shape != (2 * n, 2 * n):
        raise ValueError("M has the wrong size")
    if n > 6:
        raise ValueError("permutation search is limited to N <= 6")
    inconclusive = False
    for perm in itertools.permutations(range(n)):
        p = permutation_matrix(perm, 2)
        target = p.T @ b.m @ p
        status, bmat = solve_g_conjugacy(a.m, target, tol, rng)
        if status == "solution":
            aut = Automorphism(alg, tuple(np.eye(3) for _ in range(n)), bmat, perm)
            g = _g_matrix(bmat)
            res = float(np.abs(p @ g @ a.m @ np.linalg.inv(g) @ p.T - b.m).max())
            if res <= tol:
                return EquivalenceResult("equivalent", aut, res)
        elif status == "singular_only":
            inconclusive = True
    if inconclusive:
        return EquivalenceResult("inconclusive", detail="solution space has no invertible member found")
    return EquivalenceResult("not_equivalent", detail="M' G = G M has no solution for any factor permutation")


def u2n_invariants(m) -> np.ndarray:
    """Entries M[2i, 2i]: unchanged by G-conjugation, permuted by factor switches."""
    m = np.asarray(m)
    return np.diag(m)[::2].copy()


# ---------------------------------------------------------------------------
# u(2) inside su(2) + su(2), and the map P -> P T P^-1


def extend_u2_structure(j, nu2: int) -> np.ndarray:
    """Extend a complex structure of u(2) to su(2)+su(2).

    u(2) sits inside as J1, J2, J3 of the first factor and J3 of the second;
    J1, J2 of the second factor get the block [[0, nu2], [-nu2, 0]].
    """
    j = np.asarray(j, dtype=float)
    if nu2 not in (1, -1):
        raise ValueError("nu2 must be +1 or -1")
    if j.shape != (4, 4) or not is_complex_structure(structure_constants(LieAlgebraId.u2()), j):
        raise CanonicalizationError("input is not a complex structure on u(2)")
    out = np.zeros((6, 6))
    idx = [0, 1, 2, 5]
    out[np.ix_(idx, idx)] = j
    out[3, 4], out[4, 3] = nu2, -nu2
    return out


def standard_structure(n: int) -> np.ndarray:
    eye = np.eye(n)
    z = np.zeros((n, n))
    return np.block([[z, -eye], [eye, z]])


def chi_map(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1] or p.shape[0] % 2:
        raise ValueError("P must be square of even size")
    if abs(np.linalg.det(p)) < 1e-12:
        raise ValueError("P is singular")
    return p @ standard_structure(p.shape[0] // 2) @ np.linalg.inv(p)


def chi_section(m) -> np.ndarray:
    """Some P with P T P^-1 = m, built from pairs (v, m v) of basis vectors."""
    m = np.asarray(m, dtype=float)
    size = m.shape[0]
    if m.shape != (size, size) or size % 2:
        raise ValueError("m must be square of even size")
    if np.abs(m @ m + np.eye(size)).max() > SQUARE_TOL:
        raise ValueError("m^2 != -I")
    n = size // 2
    first, second = [], []
    for e in np.eye(size):
        trial = np.column_stack(first + second + [e, m @ e])
        if np.linalg.matrix_rank(trial, tol=1e-9) == trial.shape[1]:
            first.append(e)
            second.append(m @ e)
        if len(first) == n:
            break
    # T sends column k to column n+k and column n+k to -column k, so P T P^-1 = m
    # needs column n+k = m (column k)
    return np.column_stack(first + second)


def random_square_root_of_minus_identity(n: int, rng: np.random.Generator, spread=(0.5, 2.0)) -> np.ndarray:
    """chi_map of a well-conditioned random P of size 2n."""
    q, _ = np.linalg.qr(rng.normal(size=(2 * n, 2 * n)))
    p = q @ np.diag(rng.uniform(*spread, size=2 * n))
    return chi_map(p)
