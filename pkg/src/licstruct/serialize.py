"""JSON encoding of algebra ids, rationals, matrices, equations, forms and Laurent polynomials.

Encoders return plain ``dict``/``list`` trees; :func:`dumps` renders them
deterministically (sorted keys, fixed indentation, no NaN).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

from .canonical import Su2NForm, Su2Su2Form, Su2TorsionFree, U2Form, U2NForm
from .lie_core import Automorphism, LieAlgebraId
from .polynomial import Polynomial
from .representation import GaussianRational, LaurentPolynomial
from .torsion import TorsionEquation, xi_variables


class SchemaError(ValueError):
    """Input JSON has the wrong shape."""


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(obj, sort_keys=True, indent=indent, allow_nan=False, ensure_ascii=False)


# ---------------------------------------------------------------------------
# scalars and matrices


def rational_to_json(x) -> dict:
    x = Fraction(int(x.numerator), int(x.denominator)) if not isinstance(x, Fraction) else x
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(obj) -> Fraction:
    """Accepts {"num", "den"}, an integer, or a string such as "-2/3"."""
    if isinstance(obj, dict):
        try:
            num, den = obj["num"], obj["den"]
        except KeyError as exc:
            raise SchemaError(f"rational is missing {exc.args[0]!r}") from None
        if not (isinstance(num, int) and isinstance(den, int)) or isinstance(num, bool) or den == 0:
            raise SchemaError("rational needs integer num and nonzero integer den")
        return Fraction(num, den)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"cannot read {obj!r} as a rational") from None
    raise SchemaError(f"cannot read {obj!r} as a rational")


def number_from_json(obj) -> float:
    if isinstance(obj, bool):
        raise SchemaError("booleans are not numbers")
    if isinstance(obj, (int, float)):
        x = float(obj)
    elif isinstance(obj, (dict, str)):
        x = float(rational_from_json(obj))
    else:
        raise SchemaError(f"expected a number, got {obj!r}")
    if not math.isfinite(x):
        raise SchemaError("numbers must be finite")
    return x


def matrix_to_json(m) -> list[list[float]]:
    return [[float(x) for x in row] for row in np.asarray(m, dtype=float)]


def matrix_from_json(obj, shape: tuple[int, int] | None = None) -> np.ndarray:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise SchemaError("a matrix is a non-empty list of rows")
    if len({len(r) for r in obj}) != 1:
        raise SchemaError("matrix rows have different lengths")
    m = np.array([[number_from_json(x) for x in row] for row in obj])
    if shape is not None and m.shape != shape:
        raise SchemaError(f"expected a {shape[0]}x{shape[1]} matrix, got {m.shape[0]}x{m.shape[1]}")
    return m


# ---------------------------------------------------------------------------
# algebras

_SHORT_NAMES = {"su2": LieAlgebraId.su2(), "u2": LieAlgebraId.u2()}


def algebra_to_json(alg: LieAlgebraId) -> dict:
    return {"tag": alg.tag, "n": alg.n}


def algebra_from_json(obj) -> LieAlgebraId:
    if not isinstance(obj, dict) or "tag" not in obj:
        raise SchemaError("algebra id needs a tag")
    try:
        return LieAlgebraId(obj["tag"], int(obj.get("n", 1)))
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc)) from None


def parse_algebra(name: str) -> LieAlgebraId:
    """Short names: su2, u2, su2su2, u2u2, su2^N, u2^N."""
    name = name.strip().lower()
    if name in _SHORT_NAMES:
        return _SHORT_NAMES[name]
    if name == "su2su2":
        return LieAlgebraId.su2_power(2)
    if name == "u2u2":
        return LieAlgebraId.u2_power(2)
    base, sep, power = name.partition("^")
    if sep and base in ("su2", "u2") and power.isdigit() and int(power) >= 1:
        n = int(power)
        return LieAlgebraId.su2_power(n) if base == "su2" else LieAlgebraId.u2_power(n)
    raise SchemaError(f"unknown algebra {name!r}")


# ---------------------------------------------------------------------------
# torsion equations


def polynomial_terms_to_json(poly: Polynomial) -> list[dict]:
    return [
        {"monomial": {k: v for k, v in poly.monomial_dict(mon).items() if v}, "coeff": rational_to_json(c)}
        for mon, c in poly.sorted_terms()
    ]


def polynomial_from_terms(terms, variables) -> Polynomial:
    out = {}
    index = {name: i for i, name in enumerate(variables)}
    for term in terms:
        mon = [0] * len(variables)
        for name, power in term["monomial"].items():
            if name not in index:
                raise SchemaError(f"unknown variable {name!r}")
            mon[index[name]] = int(power)
        out[tuple(mon)] = out.get(tuple(mon), 0) + rational_from_json(term["coeff"])
    return Polynomial(variables, out)


def equation_to_json(eq: TorsionEquation) -> dict:
    return {"label": list(eq.label), "terms": polynomial_terms_to_json(eq.poly)}


def equation_from_json(obj, n: int) -> tuple[tuple[int, int, int], Polynomial]:
    label = tuple(int(x) for x in obj["label"])
    if len(label) != 3:
        raise SchemaError("equation label is [i, j, k]")
    return label, polynomial_from_terms(obj["terms"], xi_variables(n))


# ---------------------------------------------------------------------------
# canonical forms and automorphisms


def form_to_json(form) -> dict:
    return {"tag": form.tag, "params": form.params()}


def form_from_json(alg: LieAlgebraId, obj):
    """A form of the algebra's family, from {"tag", "params"} or from the bare params."""
    if not isinstance(obj, dict):
        raise SchemaError("a canonical form is a JSON object")
    params = obj.get("params", obj)
    try:
        if alg == LieAlgebraId.su2():
            return Su2TorsionFree(number_from_json(params["xi33"]))
        if alg == LieAlgebraId.u2():
            return U2Form(number_from_json(params["xi"]))
        if alg == LieAlgebraId.su2_power(2) and "eta" in params:
            return Su2Su2Form(number_from_json(params["xi"]), number_from_json(params["eta"]))
        if alg.tag == "Su2PowerN":
            return Su2NForm(matrix_from_json(params["M"], (alg.n, alg.n)))
        if alg.tag == "U2PowerN":
            return U2NForm(matrix_from_json(params["M"], (2 * alg.n, 2 * alg.n)))
    except KeyError as exc:
        raise SchemaError(f"form is missing parameter {exc.args[0]!r}") from None
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from None
    raise SchemaError(f"no canonical form for {alg.tag}")


def automorphism_to_json(a: Automorphism | None):
    if a is None:
        return None
    return {
        "algebra": algebra_to_json(a.algebra),
        "rotations": [matrix_to_json(r) for r in a.rotations],
        "center": None if a.b is None else matrix_to_json(a.b),
        "perm": list(a.perm),
    }


# ---------------------------------------------------------------------------
# Laurent polynomials


def gaussian_to_json(z: GaussianRational) -> dict:
    return {"re": rational_to_json(z.re), "im": rational_to_json(z.im)}


def laurent_to_json(f: LaurentPolynomial) -> list[dict]:
    return [
        {"p": p, "q": q, **gaussian_to_json(c)}
        for (p, q), c in sorted(f.terms.items())
    ]


def laurent_from_json(obj) -> LaurentPolynomial:
    if not isinstance(obj, list):
        raise SchemaError("a Laurent polynomial is a list of terms")
    terms = {}
    for t in obj:
        key = (int(t["p"]), int(t["q"]))
        c = GaussianRational(rational_from_json(t["re"]), rational_from_json(t["im"]))
        terms[key] = terms.get(key, GaussianRational()) + c
    return LaurentPolynomial(terms)


# ---------------------------------------------------------------------------
# shipped golden files

GOLDEN_STEMS = {"su2": "su2", "u2": "u2", "su2^2": "su2_2", "u2^2": "u2_2"}


def load_golden(name: str) -> dict:
    """The stored gen-torsion report for su2, u2, su2^2 or u2^2."""
    from importlib.resources import files

    if name not in GOLDEN_STEMS:
        raise KeyError(f"no golden file for {name!r}; choose from {sorted(GOLDEN_STEMS)}")
    text = files("licstruct").joinpath("data", "golden", f"torsion_{GOLDEN_STEMS[name]}.json").read_text("utf-8")
    return json.loads(text)
