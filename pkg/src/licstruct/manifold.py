"""Global parametrizations of the complex structures on u(2) and su(2) + su(2).

Each family is the image of an explicit polynomial-rational map F; the inverse
maps below read the parameters back off a matrix and confirm membership by
rebuilding it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lie_core import LieAlgebraId

SPHERE_TOL = 1e-12
REBUILD_TOL = 1e-8
FD_STEP = 1e-6
RANK_RTOL = 1e-8


class OffManifoldError(ValueError):
    """The input matrix is not reproduced by its own retraction."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (rebuild residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class SpherePoint:
    lam: float
    mu: float
    nu: float

    def __post_init__(self):
        if abs(self.lam**2 + self.mu**2 + self.nu**2 - 1.0) > SPHERE_TOL:
            raise ValueError("sphere point must have unit norm")

    @classmethod
    def normalized(cls, v) -> SpherePoint:
        v = np.asarray(v, dtype=float)
        n = np.linalg.norm(v)
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        v = v / n
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.lam, self.mu, self.nu])


@dataclass(frozen=True)
class U2ManifoldPoint:
    xi: float
    a: tuple[float, float, float]  # last column above the diagonal
    sign: int = 1

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not any(a) or not all(math.isfinite(x) for x in a):
            raise ValueError("a must be a finite nonzero vector")

    @property
    def c(self) -> float:
        return self.sign / math.sqrt(sum(x * x for x in self.a))


@dataclass(frozen=True)
class Su2Su2ManifoldPoint:
    xi: float
    eta: float
    s1: SpherePoint
    s2: SpherePoint

    def __post_init__(self):
        if self.eta == 0:
            raise ValueError("eta must be nonzero")


# ---------------------------------------------------------------------------
# u(2)


def u2_point_to_matrix(p: U2ManifoldPoint) -> np.ndarray:
    xi, c = p.xi, p.c
    a1, a2, a3 = p.a
    k = -(xi * xi + 1) * c * c
    return np.array(
        [
            [a1 * a1 * c * c * xi, (a3 + a2 * a1 * c * xi) * c, (a3 * a1 * c * xi - a2) * c, a1],
            [-(a3 - a2 * a1 * c * xi) * c, a2 * a2 * c * c * xi, (a3 * a2 * c * xi + a1) * c, a2],
            [(a3 * a1 * c * xi + a2) * c, (a3 * a2 * c * xi - a1) * c, a3 * a3 * c * c * xi, a3],
            [k * a1, k * a2, k * a3, -xi],
        ]
    )


def u2_retract(j) -> U2ManifoldPoint:
    """Parameters read off any 4x4 matrix with a nonzero top of column 4 (no membership check)."""
    j = np.asarray(j, dtype=float)
    a = j[:3, 3]
    norm2 = float(a @ a)
    if norm2 == 0.0:
        raise OffManifoldError("column 4 vanishes above the diagonal", float("inf"))
    twice_c = (a[2] * (j[0, 1] - j[1, 0]) + a[1] * (j[2, 0] - j[0, 2]) + a[0] * (j[1, 2] - j[2, 1])) / norm2
    sign = 1 if twice_c >= 0 else -1
    return U2ManifoldPoint(float(-j[3, 3]), tuple(a), sign)


def u2_matrix_to_point(j, tol: float = REBUILD_TOL) -> U2ManifoldPoint:
    j = np.asarray(j, dtype=float)
    if j.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    p = u2_retract(j)
    res = float(np.abs(u2_point_to_matrix(p) - j).max())
    if res > tol:
        raise OffManifoldError("matrix is not a complex structure on u(2)", res)
    return p


# ---------------------------------------------------------------------------
# su(2) + su(2)


def su2su2_point_to_matrix(p: Su2Su2ManifoldPoint) -> np.ndarray:
    xi, eta = p.xi, p.eta
    l1, m1, n1 = p.s1.lam, p.s1.mu, p.s1.nu
    l2, m2, n2 = p.s2.lam, p.s2.mu, p.s2.nu
    k = (xi * xi + 1) / eta
    return np.array(
        [
            [l1 * l1 * xi, -l1 * m1 * xi + n1, l1 * n1 * xi + m1, eta * l1 * l2, -eta * l1 * m2, eta * l1 * n2],
            [-l1 * m1 * xi - n1, m1 * m1 * xi, l1 - m1 * n1 * xi, -eta * m1 * l2, eta * m1 * m2, -eta * m1 * n2],
            [l1 * n1 * xi - m1, -l1 - m1 * n1 * xi, n1 * n1 * xi, eta * n1 * l2, -eta * n1 * m2, eta * n1 * n2],
            [-k * l1 * l2, k * m1 * l2, -k * n1 * l2, -l2 * l2 * xi, l2 * m2 * xi + n2, -l2 * n2 * xi + m2],
            [k * l1 * m2, -k * m1 * m2, k * n1 * m2, l2 * m2 * xi - n2, -m2 * m2 * xi, l2 + m2 * n2 * xi],
            [-k * l1 * n2, k * m1 * n2, -k * n1 * n2, -l2 * n2 * xi - m2, -l2 + m2 * n2 * xi, -n2 * n2 * xi],
        ]
    )


def su2su2_retract(j, epsilon: int) -> Su2Su2ManifoldPoint:
    """The retraction onto the component where eta has the sign of ``epsilon``."""
    j = np.asarray(j, dtype=float)
    d1 = np.array([j[1, 2] - j[2, 1], j[0, 2] - j[2, 0], j[0, 1] - j[1, 0]])
    d2 = np.array([j[4, 5] - j[5, 4], j[3, 5] - j[5, 3], j[3, 4] - j[4, 3]])
    h = float(np.sqrt((j[:3, 3:] ** 2).sum()))
    n1, n2 = float(d1 @ d1), float(d2 @ d2)
    if h * h * n1 * n2 == 0.0:
        raise OffManifoldError("outside the domain of the retraction", float("inf"))
    return Su2Su2ManifoldPoint(
        float(np.trace(j[:3, :3])),
        epsilon * h,
        SpherePoint.normalized(d1),
        SpherePoint.normalized(d2),
    )


def su2su2_matrix_to_point(j, tol: float = REBUILD_TOL) -> Su2Su2ManifoldPoint:
    j = np.asarray(j, dtype=float)
    if j.shape != (6, 6):
        raise ValueError("expected a 6x6 matrix")
    best = None
    for eps in (1, -1):
        p = su2su2_retract(j, eps)
        res = float(np.abs(su2su2_point_to_matrix(p) - j).max())
        if best is None or res < best[1]:
            best = (p, res)
    p, res = best
    if res > tol:
        raise OffManifoldError("matrix is not a complex structure on su(2)+su(2)", res)
    return p


# ---------------------------------------------------------------------------
# Hopf lift and components


def hopf_lift(t) -> np.ndarray:
    """A unit quaternion (u, v, w, s) whose rotation sends e3 to the unit vector t.

    Branch: v = 0 and u >= 0, i.e. q proportional to (1 + nu, 0, -lam, -mu);
    the single cut at t = -e3 returns (0, 0, 0, 1).
    """
    lam, mu, nu = (float(x) for x in (t.as_array() if isinstance(t, SpherePoint) else t))
    if abs(lam * lam + mu * mu + nu * nu - 1.0) > 1e-10:
        raise ValueError("target must be a unit vector")
    if nu <= -1.0 + 1e-12 and lam * lam + mu * mu < 1e-20:
        return np.array([0.0, 0.0, 0.0, 1.0])
    q = np.array([1.0 + nu, 0.0, -lam, -mu])
    return q / np.linalg.norm(q)


def hopf_project(q) -> np.ndarray:
    u, v, w, s = (float(x) for x in q)
    return np.array([2 * (s * v - u * w), -2 * (s * u + v * w), 2 * u * u + 2 * v * v - 1])


def component_of(alg: LieAlgebraId, j) -> int:
    if alg == LieAlgebraId.u2():
        return u2_matrix_to_point(j).sign
    if alg == LieAlgebraId.su2_power(2):
        return 1 if su2su2_matrix_to_point(j).eta > 0 else -1
    raise ValueError(f"no manifold parametrization for {alg}")


# ---------------------------------------------------------------------------
# sampling and local coordinates


def random_u2_point(rng: np.random.Generator, xi_range=(-10.0, 10.0)) -> U2ManifoldPoint:
    a = rng.normal(size=3)
    a *= rng.uniform(0.3, 3.0) / np.linalg.norm(a)
    return U2ManifoldPoint(float(rng.uniform(*xi_range)), tuple(a), int(rng.choice([-1, 1])))


def random_sphere_point(rng: np.random.Generator) -> SpherePoint:
    return SpherePoint.normalized(rng.normal(size=3))


def random_su2su2_point(rng: np.random.Generator, xi_range=(-10.0, 10.0)) -> Su2Su2ManifoldPoint:
    eta = float(rng.uniform(0.2, 5.0) * rng.choice([-1, 1]))
    return Su2Su2ManifoldPoint(float(rng.uniform(*xi_range)), eta, random_sphere_point(rng), random_sphere_point(rng))


def _sphere_from_angles(theta, phi) -> SpherePoint:
    return SpherePoint.normalized([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])


def _angles_of(s: SpherePoint) -> tuple[float, float]:
    return math.acos(max(-1.0, min(1.0, s.nu))), math.atan2(s.mu, s.lam)


def u2_local_map(x) -> np.ndarray:
    """Flattened matrix as a function of (xi, a1, a2, a3) on the component c > 0."""
    return u2_point_to_matrix(U2ManifoldPoint(x[0], tuple(x[1:4]), 1)).ravel()


def su2su2_local_map(x) -> np.ndarray:
    """Flattened matrix as a function of (xi, eta, theta1, phi1, theta2, phi2)."""
    p = Su2Su2ManifoldPoint(x[0], x[1], _sphere_from_angles(x[2], x[3]), _sphere_from_angles(x[4], x[5]))
    return su2su2_point_to_matrix(p).ravel()


def su2su2_local_coordinates(p: Su2Su2ManifoldPoint) -> np.ndarray:
    return np.array([p.xi, p.eta, *_angles_of(p.s1), *_angles_of(p.s2)])


def fd_jacobian(f, x, step: float = FD_STEP) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    cols = []
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = step
        cols.append((f(x + e) - f(x - e)) / (2 * step))
    return np.stack(cols, axis=1)


def numerical_rank(m, rtol: float = RANK_RTOL) -> int:
    sv = np.linalg.svd(m, compute_uv=False)
    return int((sv > rtol * sv[0]).sum()) if sv.size and sv[0] > 0 else 0
