"""Lie algebras su(2), u(2), su(2)^N, u(2)^N in fixed bases, and their automorphisms.

Basis ordering is factor-major: J1, J2, J3 (and J4 for u(2) factors) of the first
factor, then the second factor, and so on.  The su(2) brackets are
[J1, J2] = J3, [J2, J3] = J1, [J3, J1] = J2 and J4 is central.

Structure constants are stored as exact rationals, ``c[k][i][j]`` being the
coefficient of basis vector k in [e_i, e_j] (0-based indices).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

SO3_TOL = 1e-12
AUT_TOL = 1e-10

_TAGS = ("Su2", "U2", "Su2PowerN", "U2PowerN")


@dataclass(frozen=True)
class LieAlgebraId:
    tag: str
    n: int = 1

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown algebra tag {self.tag!r}")
        if self.n < 1:
            raise ValueError("N must be >= 1")
        if self.tag in ("Su2", "U2") and self.n != 1:
            raise ValueError(f"{self.tag} has exactly one factor")

    @classmethod
    def su2(cls) -> LieAlgebraId:
        return cls("Su2")

    @classmethod
    def u2(cls) -> LieAlgebraId:
        return cls("U2")

    @classmethod
    def su2_power(cls, n: int) -> LieAlgebraId:
        return cls("Su2PowerN", n)

    @classmethod
    def u2_power(cls, n: int) -> LieAlgebraId:
        return cls("U2PowerN", n)

    @property
    def has_center(self) -> bool:
        return self.tag in ("U2", "U2PowerN")

    @property
    def factor_dim(self) -> int:
        return 4 if self.has_center else 3

    @property
    def dim(self) -> int:
        return self.factor_dim * self.n

    def su2_indices(self, factor: int) -> list[int]:
        """0-based indices of J1, J2, J3 of the given factor."""
        base = factor * self.factor_dim
        return [base, base + 1, base + 2]

    def center_index(self, factor: int) -> int:
        if not self.has_center:
            raise ValueError(f"{self.tag} has no center")
        return factor * 4 + 3

    def factor_indices(self, factor: int) -> list[int]:
        base = factor * self.factor_dim
        return list(range(base, base + self.factor_dim))


@dataclass(frozen=True)
class StructureConstants:
    """Antisymmetric bracket tensor; ``c[k][i][j]`` is the e_k-coefficient of [e_i, e_j]."""

    dim: int
    c: tuple = field(repr=False)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array([[[float(v) for v in row] for row in mat] for mat in self.c])

    def nonzero(self) -> list[tuple[int, int, int, Fraction]]:
        """Sparse listing (k, i, j, value) of the nonzero constants."""
        out = []
        for k in range(self.dim):
            for i in range(self.dim):
                for j in range(self.dim):
                    v = self.c[k][i][j]
                    if v:
                        out.append((k, i, j, v))
        return out

    def is_antisymmetric(self) -> bool:
        n = self.dim
        return all(
            self.c[k][i][j] == -self.c[k][j][i]
            for k in range(n)
            for i in range(n)
            for j in range(n)
        )

    def satisfies_jacobi(self) -> bool:
        n, c = self.dim, self.c
        for i, j, k, l in itertools.product(range(n), repeat=4):
            s = sum(
                c[m][i][j] * c[l][m][k] + c[m][j][k] * c[l][m][i] + c[m][k][i] * c[l][m][j]
                for m in range(n)
            )
            if s != 0:
                return False
        return True

    @classmethod
    def from_array(cls, arr) -> StructureConstants:
        arr = np.asarray(arr)
        n = arr.shape[0]
        c = tuple(
            tuple(tuple(Fraction(arr[k, i, j]).limit_denominator() for j in range(n)) for i in range(n))
            for k in range(n)
        )
        return cls(n, c)

    @classmethod
    def abelian(cls, dim: int) -> StructureConstants:
        zero = Fraction(0)
        return cls(dim, tuple(tuple((zero,) * dim for _ in range(dim)) for _ in range(dim)))


def structure_constants(alg: LieAlgebraId) -> StructureConstants:
    n = alg.dim
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for f in range(alg.n):
        a, b, d = alg.su2_indices(f)
        # cyclic: [J1,J2]=J3, [J2,J3]=J1, [J3,J1]=J2
        for x, y, z in ((a, b, d), (b, d, a), (d, a, b)):
            c[z][x][y] = Fraction(1)
            c[z][y][x] = Fraction(-1)
    return StructureConstants(n, tuple(tuple(tuple(row) for row in mat) for mat in c))


def bracket(sc: StructureConstants, x, y) -> np.ndarray:
    """[x, y] for real or complex coordinate vectors."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != (sc.dim,) or y.shape != (sc.dim,):
        raise ValueError(f"expected vectors of length {sc.dim}, got {x.shape} and {y.shape}")
    return np.einsum("kij,i,j->k", sc.array, x, y)


def bracket_table(sc: StructureConstants, m) -> np.ndarray:
    """T[:, i, j] = [m e_i, m e_j] for every pair of basis vectors."""
    return np.einsum("kab,ai,bj->kij", sc.array, m, m)


# ---------------------------------------------------------------------------
# rotations and quaternions


def quaternion_to_rotation(q, tol: float = SO3_TOL) -> np.ndarray:
    """Rotation matrix of the unit quaternion q = (u, v, w, s).

    Uses the parametrization in which (1, 0, 0, 0) is the identity and
    (0, 0, 0, 1) is diag(1, -1, -1); q and -q give the same matrix.
    """
    u, v, w, s = (float(t) for t in q)
    if abs(u * u + v * v + w * w + s * s - 1.0) > tol:
        raise ValueError("quaternion must have unit norm")
    return np.array(
        [
            [u * u - v * v - w * w + s * s, -2 * (u * v + w * s), 2 * (-u * w + s * v)],
            [2 * (-s * w + u * v), u * u - v * v + w * w - s * s, -2 * (s * u + v * w)],
            [2 * (s * v + u * w), 2 * (s * u - v * w), u * u + v * v - w * w - s * s],
        ]
    )


def random_unit_quaternion(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    return q / np.linalg.norm(q)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    return quaternion_to_rotation(random_unit_quaternion(rng))


def is_rotation(r, tol: float = SO3_TOL) -> bool:
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        return False
    return bool(np.abs(r.T @ r - np.eye(3)).max() <= tol and abs(np.linalg.det(r) - 1.0) <= tol)


# ---------------------------------------------------------------------------
# automorphisms


def cycle_type(perm) -> tuple[int, ...]:
    """Sorted cycle lengths of a permutation given as a tuple of images."""
    seen = set()
    lengths = []
    for start in range(len(perm)):
        if start in seen:
            continue
        k, length = start, 0
        while k not in seen:
            seen.add(k)
            k = perm[k]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def permutation_matrix(perm, block: int = 1) -> np.ndarray:
    """Block permutation matrix sending block j to block perm[j]."""
    n = len(perm)
    p = np.zeros((n * block, n * block))
    eye = np.eye(block)
    for j, i in enumerate(perm):
        p[i * block:(i + 1) * block, j * block:(j + 1) * block] = eye
    return p


@dataclass(frozen=True)
class Automorphism:
    """Block element of Aut(g).

    ``rotations[i]`` acts on J1, J2, J3 of factor i.  ``b[i][j]`` is the matrix
    entry at (center of factor i, center of factor j); it is a 1x1 matrix for
    u(2) and ``None`` for the su(2) families.  ``perm[j]`` is the factor that
    factor j is sent to after the block map; the identity is allowed.
    """

    algebra: LieAlgebraId
    rotations: tuple
    b: np.ndarray | None = None
    perm: tuple | None = None

    def __post_init__(self):
        alg = self.algebra
        rots = tuple(np.asarray(r, dtype=float) for r in self.rotations)
        object.__setattr__(self, "rotations", rots)
        if len(rots) != alg.n:
            raise ValueError(f"expected {alg.n} rotation blocks, got {len(rots)}")
        for r in rots:
            if r.shape != (3, 3):
                raise ValueError("rotation blocks must be 3x3")
            if not is_rotation(r, AUT_TOL):
                raise ValueError("rotation block is not in SO(3)")
        if alg.has_center:
            if self.b is None:
                b = np.eye(alg.n)
            else:
                b = np.atleast_2d(np.asarray(self.b, dtype=float))
            if b.shape != (alg.n, alg.n):
                raise ValueError(f"center block must be {alg.n}x{alg.n}")
            if abs(np.linalg.det(b)) == 0.0:
                raise ValueError("center block must be invertible")
            object.__setattr__(self, "b", b)
        elif self.b is not None:
            raise ValueError(f"{alg.tag} has no center coefficients")
        perm = tuple(range(alg.n)) if self.perm is None else tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(alg.n)):
            raise ValueError("perm must be a permutation of the factors")
        object.__setattr__(self, "perm", perm)

    def cycle_type(self) -> tuple[int, ...]:
        return cycle_type(self.perm)


def assemble_automorphism(a: Automorphism) -> np.ndarray:
    """The dim x dim matrix of the automorphism: tau_sigma composed with the block map."""
    alg = a.algebra
    h = np.zeros((alg.dim, alg.dim))
    for f, r in enumerate(a.rotations):
        idx = alg.su2_indices(f)
        h[np.ix_(idx, idx)] = r
    if alg.has_center:
        centers = [alg.center_index(f) for f in range(alg.n)]
        h[np.ix_(centers, centers)] = a.b
    return permutation_matrix(a.perm, alg.factor_dim) @ h


def is_automorphism(sc: StructureConstants, m, tol: float = AUT_TOL) -> bool:
    m = np.asarray(m, dtype=float)
    if m.shape != (sc.dim, sc.dim):
        raise ValueError("matrix size does not match the algebra")
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[-1] <= tol * max(1.0, sv[0]):
        return False
    lhs = np.einsum("ka,aij->kij", m, sc.array)
    rhs = bracket_table(sc, m)
    return bool(np.abs(lhs - rhs).max() <= tol)


def random_automorphism(
    alg: LieAlgebraId,
    rng: np.random.Generator,
    *,
    with_perm: bool = False,
    b_scale: tuple[float, float] = (0.5, 2.0),
) -> Automorphism:
    """Random automorphism; center coefficients drawn as a well-conditioned matrix."""
    rots = [random_rotation(rng) for _ in range(alg.n)]
    b = None
    if alg.has_center:
        lo, hi = b_scale
        # product of a rotation-like orthogonal factor and a diagonal keeps cond(b) <= hi/lo
        q, _ = np.linalg.qr(rng.normal(size=(alg.n, alg.n)))
        d = rng.uniform(lo, hi, size=alg.n) * rng.choice([-1.0, 1.0], size=alg.n)
        b = q @ np.diag(d)
    perm = tuple(rng.permutation(alg.n)) if with_perm else None
    return Automorphism(alg, tuple(rots), b, perm)
