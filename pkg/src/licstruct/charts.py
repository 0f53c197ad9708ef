"""Euler-angle coordinates and holomorphic charts on U(2) and SU(2) x SU(2).

Coordinates on U(2) are (s, theta, phi, psi); on SU(2) x SU(2) they are
(theta1, phi1, psi1, theta2, phi2, psi2).  Vector fields are returned as
coefficient vectors in the coordinate frame, so applying a field to a function
is a dot product with its gradient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

FD_STEP = 1e-6
BOX_MARGIN = 1e-2

U2_BOX = ((-math.pi, math.pi), (0.0, math.pi), (0.0, 2 * math.pi), (-2 * math.pi, 2 * math.pi))
SU2_BOX = ((0.0, math.pi), (0.0, 2 * math.pi), (-2 * math.pi, 2 * math.pi))
W_BOX = SU2_BOX + SU2_BOX


@dataclass(frozen=True)
class EulerPointU2:
    s: float
    theta: float
    phi: float
    psi: float

    def as_array(self) -> np.ndarray:
        return np.array([self.s, self.theta, self.phi, self.psi])

    def inside(self, margin: float = 1e-9) -> bool:
        return all(lo + margin <= x <= hi - margin for x, (lo, hi) in zip(self.as_array(), U2_BOX))


@dataclass(frozen=True)
class EulerPointW:
    theta1: float
    phi1: float
    psi1: float
    theta2: float
    phi2: float
    psi2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.theta1, self.phi1, self.psi1, self.theta2, self.phi2, self.psi2])

    def inside(self, margin: float = 1e-9) -> bool:
        return all(lo + margin <= x <= hi - margin for x, (lo, hi) in zip(self.as_array(), W_BOX))


@dataclass(frozen=True)
class ChartValueU2:
    w1: complex
    w2: complex


def _random_in_box(box, rng, margin):
    return [rng.uniform(lo + margin, hi - margin) for lo, hi in box]


def random_point_u2(rng: np.random.Generator, margin: float = BOX_MARGIN) -> EulerPointU2:
    return EulerPointU2(*_random_in_box(U2_BOX, rng, margin))


def random_point_w(rng: np.random.Generator, margin: float = BOX_MARGIN) -> EulerPointW:
    return EulerPointW(*_random_in_box(W_BOX, rng, margin))


# ---------------------------------------------------------------------------
# group coordinates


def euler_to_unitary(p: EulerPointU2) -> np.ndarray:
    """diag(e^{is}, 1) exp(phi J3) exp(theta J1) exp(psi J3) as a 2x2 unitary matrix."""
    s, t, f, g = p.s, p.theta, p.phi, p.psi
    c, sn = math.cos(t / 2), math.sin(t / 2)
    es = np.exp(1j * s)
    return np.array(
        [
            [es * np.exp(1j * (f + g) / 2) * c, 1j * es * np.exp(1j * (f - g) / 2) * sn],
            [1j * np.exp(-1j * (f - g) / 2) * sn, np.exp(-1j * (f + g) / 2) * c],
        ]
    )


def w1_from_unitary(u, s: float) -> complex:
    a, b = u[0, 0], u[0, 1]
    return complex(-1j * np.exp(-1j * s) * a / np.conj(b))


def w2_squared_from_unitary(u, s: float, xi: float) -> complex:
    a, b = u[0, 0], u[0, 1]
    return complex(2j * a * np.conj(b) * np.exp(s * (1 + 1j * xi) / (1 + xi * xi)))


# ---------------------------------------------------------------------------
# vector fields


def su2_fields(theta: float, psi: float) -> np.ndarray:
    """Rows X1, X2, X3 in the frame (d_theta, d_phi, d_psi)."""
    st, ct = math.sin(theta), math.cos(theta)
    if st == 0.0:
        raise ValueError("theta on the boundary of the chart")
    cot = ct / st
    cp, sp = math.cos(psi), math.sin(psi)
    return np.array(
        [
            [cp, sp / st, -cot * sp],
            [-sp, cp / st, -cot * cp],
            [0.0, 0.0, 1.0],
        ]
    )


def vector_fields_u2(p: EulerPointU2) -> np.ndarray:
    """Rows X1..X4 in the frame (d_s, d_theta, d_phi, d_psi)."""
    x = np.zeros((4, 4))
    x[:3, 1:] = su2_fields(p.theta, p.psi)
    x[3] = [1.0, 0.0, -1.0, 0.0]
    return x


def antiholomorphic_fields_u2(p: EulerPointU2, xi: float) -> np.ndarray:
    """Complex rows X1 - i X2 and i X3 + (1 - i xi) X4."""
    x = vector_fields_u2(p)
    return np.array([x[0] - 1j * x[1], 1j * x[2] + (1 - 1j * xi) * x[3]])


def vector_fields_w(p: EulerPointW) -> np.ndarray:
    """Rows X1^(1), X2^(1), X3^(1), X1^(2), X2^(2), X3^(2) in the 6 coordinate directions."""
    x = np.zeros((6, 6))
    x[:3, :3] = su2_fields(p.theta1, p.psi1)
    x[3:, 3:] = su2_fields(p.theta2, p.psi2)
    return x


def antiholomorphic_fields_w(p: EulerPointW, xi: float, eta: float) -> np.ndarray:
    """Complex rows X1^(1) - i X2^(1), X1^(2) - i X2^(2), i eta X3^(1) + (1 - i xi) X3^(2)."""
    x = vector_fields_w(p)
    return np.array([x[0] - 1j * x[1], x[3] - 1j * x[4], 1j * eta * x[2] + (1 - 1j * xi) * x[5]])


# ---------------------------------------------------------------------------
# chart functions


def _w_values(x, xi: float) -> np.ndarray:
    s, t, f, g = x
    k = 1 + xi * xi
    w1 = np.exp(1j * (s + f)) / math.tan(t / 2)
    w2 = np.exp((1 + 1j * xi) * s / (2 * k)) * np.exp(1j * g / 2) * math.sqrt(math.sin(t))
    return np.array([w1, w2])


def chart_w(p: EulerPointU2, xi: float) -> ChartValueU2:
    w1, w2 = _w_values(p.as_array(), xi)
    return ChartValueU2(complex(w1), complex(w2))


def _z3_exponent(xi: float, eta: float) -> complex:
    """beta with z3 = u1 * u2**beta, u_k = e^{i psi_k / 2} sqrt(sin theta_k)."""
    return eta * (xi - 1j) / (1 + xi * xi)


def _z_values(x, xi: float, eta: float) -> np.ndarray:
    t1, f1, g1, t2, f2, g2 = x
    beta = _z3_exponent(xi, eta)
    z1 = np.exp(1j * f1) / math.tan(t1 / 2)
    z2 = np.exp(1j * f2) / math.tan(t2 / 2)
    z3 = np.exp(1j * g1 / 2) * math.sqrt(math.sin(t1)) * np.exp(beta * (1j * g2 / 2 + 0.5 * math.log(math.sin(t2))))
    return np.array([z1, z2, z3])


def z3_as_printed(p: EulerPointW, xi: float, eta: float) -> complex:
    """The third function with a plain sqrt(sin theta2) factor; not holomorphic (kept for comparison)."""
    k = 1 + xi * xi
    return complex(
        np.exp(1j * p.psi1 / 2)
        * np.exp(eta * (1 + 1j * xi) * p.psi2 / (2 * k))
        * math.sqrt(math.sin(p.theta1))
        * math.sqrt(math.sin(p.theta2))
    )


def chart_z(p: EulerPointW, xi: float, eta: float) -> tuple[complex, complex, complex]:
    if eta == 0:
        raise ValueError("eta must be nonzero")
    return tuple(complex(z) for z in _z_values(p.as_array(), xi, eta))


# ---------------------------------------------------------------------------
# Jacobians


def chart_jacobian_u2(p: EulerPointU2, xi: float) -> float:
    """Closed form of det d(Re w1, Im w1, Re w2, Im w2)/d(s, theta, phi, psi)."""
    k = 1 + xi * xi
    return -math.exp(p.s / k) / math.tan(p.theta / 2) ** 2 / (4 * k)


def chart_jacobian_z(p: EulerPointW, xi: float, eta: float) -> float:
    """Closed form of the real 6x6 Jacobian determinant of Z in the Euler coordinates."""
    k = 1 + xi * xi
    return (
        -eta / (4 * k) * math.exp(eta * p.psi2 / k)
        / math.tan(p.theta1 / 2) ** 2
        / math.tan(p.theta2 / 2) ** 2
        * math.sin(p.theta2) ** (eta * xi / k - 1)
    )


def jacobian_z_as_printed(p: EulerPointW, xi: float, eta: float) -> float:
    """Real Jacobian determinant of the map using :func:`z3_as_printed`."""
    k = 1 + xi * xi
    return -eta / (4 * k) * math.exp(eta * p.psi2 / k) / math.tan(p.theta1 / 2) ** 2 / math.tan(p.theta2 / 2) ** 2


def _real_jacobian(values, x, step):
    """d(Re f_1, Im f_1, ...)/dx by central differences."""
    x = np.asarray(x, dtype=float)
    cols = []
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = step
        d = (values(x + e) - values(x - e)) / (2 * step)
        cols.append(np.column_stack([d.real, d.imag]).ravel())
    return np.stack(cols, axis=1)


def numeric_jacobian_u2(p: EulerPointU2, xi: float, step: float = FD_STEP) -> float:
    return float(np.linalg.det(_real_jacobian(lambda x: _w_values(x, xi), p.as_array(), step)))


def numeric_jacobian_z(p: EulerPointW, xi: float, eta: float, step: float = FD_STEP) -> float:
    return float(np.linalg.det(_real_jacobian(lambda x: _z_values(x, xi, eta), p.as_array(), step)))


# ---------------------------------------------------------------------------
# holomorphy residuals


HOLO_DPS = 40
HOLO_STEP = 1e-12


def _w_mp(x, xi):
    s, t, f, g = x
    k = 1 + xi * xi
    w1 = mpmath.expj(s + f) / mpmath.tan(t / 2)
    w2 = mpmath.exp(mpmath.mpc(1, xi) * s / (2 * k)) * mpmath.expj(g / 2) * mpmath.sqrt(mpmath.sin(t))
    return [w1, w2]


def _z_mp(x, xi, eta):
    t1, f1, g1, t2, f2, g2 = x
    beta = eta * mpmath.mpc(xi, -1) / (1 + xi * xi)
    z1 = mpmath.expj(f1) / mpmath.tan(t1 / 2)
    z2 = mpmath.expj(f2) / mpmath.tan(t2 / 2)
    u2 = mpmath.mpc(0, 1) * g2 / 2 + mpmath.log(mpmath.sin(t2)) / 2
    z3 = mpmath.expj(g1 / 2) * mpmath.sqrt(mpmath.sin(t1)) * mpmath.exp(beta * u2)
    return [z1, z2, z3]


def _float_gradients(values, x, step):
    x = np.asarray(x, dtype=float)
    rows = []
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = step
        rows.append((values(x + e) - values(x - e)) / (2 * step))
    return np.array(rows)


def _mp_gradients(values, x, step=HOLO_STEP, dps=HOLO_DPS):
    """Central differences evaluated in extended precision, rounded to complex128."""
    with mpmath.workdps(dps):
        xm = [mpmath.mpf(float(v)) for v in x]
        h = mpmath.mpf(step)
        rows = []
        for k in range(len(xm)):
            up = list(xm)
            dn = list(xm)
            up[k] += h
            dn[k] -= h
            rows.append([complex((a - b) / (2 * h)) for a, b in zip(values(up), values(dn))])
    return np.array(rows)


def holomorphy_residuals_u2(p: EulerPointU2, xi: float, *, method: str = "mp", step: float | None = None) -> np.ndarray:
    """|Y w^a| for the two antiholomorphic fields Y (rows) and both chart functions (columns).

    ``method="mp"`` differentiates in 40-digit arithmetic (default step 1e-12);
    ``method="float"`` uses double precision (default step 1e-6).
    """
    _require_regular(p.theta)
    grad = _gradient_u2(p, xi, method, step)
    return np.abs(antiholomorphic_fields_u2(p, xi) @ grad)


def holomorphy_residuals_w(
    p: EulerPointW, xi: float, eta: float, *, method: str = "mp", step: float | None = None
) -> np.ndarray:
    _require_regular(p.theta1, p.theta2)
    if method == "mp":
        grad = _mp_gradients(lambda x: _z_mp(x, mpmath.mpf(xi), mpmath.mpf(eta)), p.as_array(), step or HOLO_STEP)
    elif method == "float":
        grad = _float_gradients(lambda x: _z_values(x, xi, eta), p.as_array(), step or FD_STEP)
    else:
        raise ValueError(f"unknown method {method!r}")
    return np.abs(antiholomorphic_fields_w(p, xi, eta) @ grad)


def _require_regular(*thetas):
    for t in thetas:
        if math.sin(t) <= 0.0:
            raise ValueError("theta on the boundary of the chart")


def _gradient_u2(p, xi, method, step):
    if method == "mp":
        return _mp_gradients(lambda x: _w_mp(x, mpmath.mpf(xi)), p.as_array(), step or HOLO_STEP)
    if method == "float":
        return _float_gradients(lambda x: _w_values(x, xi), p.as_array(), step or FD_STEP)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# the image F(V)


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    near_excluded: bool  # within 1e-9 of one of the excluded loci
    reasons: tuple[str, ...]

    def __bool__(self):
        return self.member


def _angle_distance(a: float, b: float) -> float:
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def chart_domain_membership(w: ChartValueU2, xi: float, flag_tol: float = 1e-9) -> MembershipReport:
    r1, r2 = abs(w.w1), abs(w.w2)
    if r1 == 0 or r2 == 0:
        return MembershipReport(False, False, ("r1 * r2 = 0",))
    k = 1 + xi * xi
    base = math.sqrt(2 * r1 / (1 + r1 * r1))
    omega = math.log(r2) - 0.5 * math.log(2 * r1 / (1 + r1 * r1))
    reasons = []
    near = False
    lo, hi = base * math.exp(-math.pi / (2 * k)), base * math.exp(math.pi / (2 * k))
    if not lo < r2 < hi:
        reasons.append("r2 outside the admissible band")
    elif min(r2 - lo, hi - r2) <= flag_tol * hi:
        near = True
    d1 = _angle_distance(np.angle(w.w1), 2 * k * omega)
    d2 = _angle_distance(np.angle(w.w2), xi * omega + math.pi)
    if d1 == 0.0:
        reasons.append("arg w1 on the excluded line")
    if d2 == 0.0:
        reasons.append("arg w2 on the excluded line")
    near = near or d1 <= flag_tol or d2 <= flag_tol
    return MembershipReport(not reasons, near and not reasons, tuple(reasons))
