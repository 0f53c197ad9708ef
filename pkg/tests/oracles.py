"""Oracles that do not share code with the package.

* the nine su(2) torsion equations as printed in the source, transcribed verbatim;
* a sympy Nijenhuis tensor built from the cross product;
* sympy differentiation of the operators J1..J4 on (w1)^p (w2)^q.
"""

import itertools

import sympy as sp

# xi_i_j is the entry in row i, column j (superscript i, subscript j in the source)
PRINTED_SU2 = {
    (1, 2, 1): "xi_1_3*(xi_2_2 + xi_1_1) + xi_3_1*(xi_2_2 - xi_1_1) - xi_3_2*(xi_2_1 + xi_1_2)",
    (1, 2, 2): "xi_2_3*(xi_2_2 + xi_1_1) - xi_3_2*(xi_2_2 - xi_1_1) - xi_3_1*(xi_2_1 + xi_1_2)",
    (1, 2, 3): "xi_1_2*xi_2_1 - xi_2_2*xi_1_1 - xi_3_1**2 - xi_3_2**2 + xi_3_3*(xi_2_2 + xi_1_1) + 1",
    (1, 3, 1): "xi_1_1*(xi_2_1 - xi_1_2) + xi_2_3*(xi_1_3 + xi_3_1) - xi_3_3*(xi_2_1 + xi_1_2)",
    (1, 3, 2): "xi_1_3*xi_3_1 + xi_2_2*xi_1_1 - xi_2_1**2 - xi_2_3**2 + xi_3_3*(xi_2_2 - xi_1_1) + 1",
    (1, 3, 3): "-xi_1_1*(xi_2_3 + xi_3_2) + xi_2_1*(xi_1_3 + xi_3_1) + xi_3_3*(xi_2_3 - xi_3_2)",
    (2, 3, 1): "xi_3_2*xi_2_3 + xi_2_2*xi_1_1 - xi_1_3**2 - xi_1_2**2 - xi_3_3*(xi_2_2 - xi_1_1) + 1",
    (2, 3, 2): "xi_2_2*(xi_2_1 - xi_1_2) - xi_1_3*(xi_2_3 + xi_3_2) + xi_3_3*(xi_2_1 + xi_1_2)",
    (2, 3, 3): "xi_2_2*(xi_3_1 + xi_1_3) - xi_1_2*(xi_2_3 + xi_3_2) + xi_3_3*(xi_3_1 - xi_1_3)",
}


def xi_symbols(n):
    return sp.Matrix(n, n, lambda i, j: sp.Symbol(f"xi_{i + 1}_{j + 1}"))


def _su2_bracket(x, y):
    return sp.Matrix(x).cross(sp.Matrix(y))


def bracket_oracle(kind, n_factors):
    """Bracket on column vectors for su2^N (kind "su2") or u2^N (kind "u2")."""
    fd = 3 if kind == "su2" else 4

    def br(x, y):
        out = sp.zeros(fd * n_factors, 1)
        for f in range(n_factors):
            s = slice(f * fd, f * fd + 3)
            out[s, 0] = _su2_bracket(x[s, 0], y[s, 0])
        return out

    return br, fd * n_factors


def nijenhuis_oracle(kind, n_factors, j=None):
    """dict (i, j, k) -> sympy expression of the e_k-coordinate of N(e_i, e_j), 1-based."""
    br, dim = bracket_oracle(kind, n_factors)
    j = xi_symbols(dim) if j is None else sp.Matrix(j)
    eye = sp.eye(dim)
    out = {}
    for a, b in itertools.combinations(range(dim), 2):
        x, y = eye[:, a], eye[:, b]
        val = br(j * x, j * y) - br(x, y) - j * br(j * x, y) - j * br(x, j * y)
        for k in range(dim):
            out[(a + 1, b + 1, k + 1)] = sp.expand(val[k])
    return out


W1, W2, XI = sp.symbols("w1 w2 xi")


def j_operator_oracle(tag, f, xi):
    """The differential operators J1..J4, H+, H-, H3, H4 on a function of (w1, w2)."""
    d1, d2 = sp.diff(f, W1), sp.diff(f, W2)
    k = 1 + xi**2
    j1 = (1 + W1**2) / 2 * d1 + W2 * (1 - W1**2) / (4 * W1) * d2
    j2 = sp.I * (1 - W1**2) / 2 * d1 + sp.I * W2 * (1 + W1**2) / (4 * W1) * d2
    j3 = -sp.I * W1 * d1
    j4 = -(1 + sp.I * xi) / k * W2 * d2
    table = {
        "J1": j1,
        "J2": j2,
        "J3": j3,
        "J4": j4,
        "Hplus": sp.I * (W1**2 * d1 - W1 * W2 * d2 / 2),
        "Hminus": sp.I * (d1 + W2 / (2 * W1) * d2),
        "H3": W1 * d1,
        "H4": W2 * d2,
    }
    return sp.expand(table[tag])
