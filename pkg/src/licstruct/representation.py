"""Exact operator algebra of u(2) acting on Laurent monomials (w1)^p (w2)^q.

phi(p, q) denotes the monomial.  All coefficients are Gaussian rationals, so
every identity below is checked with zero error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

# ---------------------------------------------------------------------------
# scalars


_MPQ = type(mpq(0))


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is _MPQ else mpq(re)
        self.im = im if type(im) is _MPQ else mpq(im)

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if type(x) is GaussianRational:
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(x)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}i)"


I = GaussianRational(0, 1)
ZERO = GaussianRational()
ONE = GaussianRational(1)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (p, q), c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                clean[(int(p), int(q))] = c
        self.terms = clean

    @classmethod
    def monomial(cls, p: int, q: int, coeff=1) -> LaurentPolynomial:
        return cls({(p, q): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return LaurentPolynomial(out)

    def __neg__(self):
        return LaurentPolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> LaurentPolynomial:
        c = GaussianRational.coerce(c)
        return LaurentPolynomial({k: c * v for k, v in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set[tuple[int, int]]:
        return set(self.terms)

    def __repr__(self):
        body = " + ".join(f"{c}*phi({p},{q})" for (p, q), c in sorted(self.terms.items()))
        return f"LaurentPolynomial({body or '0'})"


# ---------------------------------------------------------------------------
# operators

OPERATOR_TAGS = ("J1", "J2", "J3", "J4", "Hplus", "Hminus", "H3", "H4", "Casimir")


@dataclass(frozen=True)
class RepOperator:
    tag: str
    xi: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if self.tag not in OPERATOR_TAGS:
            raise ValueError(f"unknown operator {self.tag!r}")
        object.__setattr__(self, "xi", Fraction(self.xi))


def _half(q: int):
    return mpq(q, 2)


def _monomial_image(op: RepOperator, p: int, q: int) -> list[tuple[int, GaussianRational]]:
    """Images (p', coefficient) of phi(p, q); q is preserved by every operator."""
    u = _half(q)
    xi = mpq(op.xi)
    up = p - u  # coefficient factor for the raising part
    down = p + u  # and for the lowering part
    t = op.tag
    if t == "Hplus":
        return [(p + 1, I * up)]
    if t == "Hminus":
        return [(p - 1, I * down)]
    if t == "H3":
        return [(p, GaussianRational(p))]
    if t == "H4":
        return [(p, GaussianRational(q))]
    if t == "J1":
        return [(p + 1, GaussianRational(up / 2)), (p - 1, GaussianRational(down / 2))]
    if t == "J2":
        return [(p - 1, GaussianRational(0, down / 2)), (p + 1, GaussianRational(0, -up / 2))]
    if t == "J3":
        return [(p, GaussianRational(0, -p))]
    if t == "J4":
        k = 1 + xi * xi
        return [(p, GaussianRational(-q / k, -q * xi / k))]
    if t == "Casimir":
        return [(p, GaussianRational(u * (u + 1)))]
    raise AssertionError(t)


def apply(op: RepOperator, f: LaurentPolynomial) -> LaurentPolynomial:
    if op.tag == "Casimir":
        return casimir(f)
    out: dict = {}
    for (p, q), c in f.terms.items():
        for p2, k in _monomial_image(op, p, q):
            if k:
                out[(p2, q)] = out.get((p2, q), ZERO) + c * k
    return LaurentPolynomial(out)


def commutator(a: RepOperator, b: RepOperator, f: LaurentPolynomial) -> LaurentPolynomial:
    return apply(a, apply(b, f)) - apply(b, apply(a, f))


def casimir(f: LaurentPolynomial) -> LaurentPolynomial:
    """H+ H- + H3^2 - H3, computed by composing the ladder operators."""
    hp, hm, h3 = RepOperator("Hplus"), RepOperator("Hminus"), RepOperator("H3")
    h3f = apply(h3, f)
    return apply(hp, apply(hm, f)) + apply(h3, h3f) - h3f


# ---------------------------------------------------------------------------
# invariant subspaces of a slice q = const


@dataclass(frozen=True)
class MonomialSpan:
    """Span of phi(p, q) for p in a finite set, a half-line p >= start, or p <= start."""

    kind: str  # "finite" | "up" | "down"
    start: int | None = None
    members: frozenset = frozenset()

    @classmethod
    def finite(cls, ps) -> MonomialSpan:
        return cls("finite", None, frozenset(int(p) for p in ps))

    @classmethod
    def at_least(cls, start: int) -> MonomialSpan:
        return cls("up", int(start))

    @classmethod
    def at_most(cls, start: int) -> MonomialSpan:
        return cls("down", int(start))

    def __contains__(self, p) -> bool:
        if self.kind == "finite":
            return p in self.members
        return p >= self.start if self.kind == "up" else p <= self.start

    def seeds(self, window: int) -> list[int]:
        if self.kind == "finite":
            return sorted(self.members)
        step = 1 if self.kind == "up" else -1
        return [self.start + step * n for n in range(window + 1)]

    def dimension(self):
        return len(self.members) if self.kind == "finite" else float("inf")


@dataclass(frozen=True)
class InvariantSubspace:
    label: str
    span: MonomialSpan
    note: str = ""


@dataclass(frozen=True)
class SubrepClassification:
    q: int
    u: Fraction
    case: int
    subspaces: tuple[InvariantSubspace, ...]
    quotient_dimension: int | None = None
    slice_label: str = ""


def classify_subrep(q: int) -> SubrepClassification:
    q = int(q)
    u = Fraction(q, 2)
    if q % 2:
        return SubrepClassification(q, u, 3, (), None, f"D^{q}(u,0) with u={u}: no proper invariant monomial span")
    k = abs(q) // 2
    if q < 0:
        subs = (
            InvariantSubspace("up", MonomialSpan.at_least(k), f"generated by phi({k},{q})"),
            InvariantSubspace("down", MonomialSpan.at_most(-k), f"generated by phi({-k},{q})"),
        )
        return SubrepClassification(q, u, 1, subs, 2 * k - 1, f"quotient D^{q}({2 * (k - 1)})")
    subs = (
        InvariantSubspace("D", MonomialSpan.finite(range(-k, k + 1)), f"D^{q}({2 * k}), polynomials of degree <= {2 * k}"),
        InvariantSubspace("D_up", MonomialSpan.at_least(-k), "lowest-weight extension of D"),
        InvariantSubspace("D_down", MonomialSpan.at_most(k), "highest-weight extension of D"),
    )
    return SubrepClassification(q, u, 2, subs, None, f"D^{q}({2 * k})")


_LADDER = (RepOperator("Hplus"), RepOperator("Hminus"), RepOperator("H3"), RepOperator("H4"))


def invariant_span_check(q: int, exponents, depth: int) -> bool:
    """True iff up to ``depth`` applications of H+, H-, H3, H4 never leave the span.

    ``exponents`` is a finite iterable of p values or a :class:`MonomialSpan`.
    Half-lines are checked on a window of ``depth + 1`` monomials from their end,
    which covers every place an image can leave them within ``depth`` steps.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    span = exponents if isinstance(exponents, MonomialSpan) else MonomialSpan.finite(exponents)
    frontier = [LaurentPolynomial.monomial(p, q) for p in span.seeds(depth)]
    seen = {p for p in span.seeds(depth)}
    for _ in range(depth):
        nxt = []
        for f in frontier:
            for op in _LADDER:
                g = apply(op, f)
                for p, _q in g.support():
                    if p not in span:
                        return False
                    if p not in seen:
                        seen.add(p)
                        nxt.append(LaurentPolynomial.monomial(p, q))
        if not nxt:
            break
        frontier = nxt
    return True


def monomials(pmax: int, qmax: int):
    for p, q in itertools.product(range(-pmax, pmax + 1), range(-qmax, qmax + 1)):
        yield p, q, LaurentPolynomial.monomial(p, q)


# ---------------------------------------------------------------------------
# batch verification of the structural identities


@dataclass(frozen=True)
class IdentityReport:
    name: str
    checked: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0


def verify_identities(xi: Fraction, pmax: int = 20, qmax: int = 20) -> list[IdentityReport]:
    """Ladder relations, Casimir scalar, H/J consistency and su(2) brackets on every monomial."""
    xi = Fraction(xi)
    ops = {t: RepOperator(t, xi) for t in OPERATOR_TAGS}
    checks = {
        "[H3,H+] = H+": lambda f, u: commutator(ops["H3"], ops["Hplus"], f) - apply(ops["Hplus"], f),
        "[H3,H-] = -H-": lambda f, u: commutator(ops["H3"], ops["Hminus"], f) + apply(ops["Hminus"], f),
        "[H+,H-] = 2 H3": lambda f, u: commutator(ops["Hplus"], ops["Hminus"], f) - apply(ops["H3"], f) * 2,
        "[H4,H+] = 0": lambda f, u: commutator(ops["H4"], ops["Hplus"], f),
        "C = u(u+1)": lambda f, u: casimir(f) - f * (u * (u + 1)),
        "H+ = i J1 - J2": lambda f, u: apply(ops["Hplus"], f) - (apply(ops["J1"], f) * I - apply(ops["J2"], f)),
        "H- = i J1 + J2": lambda f, u: apply(ops["Hminus"], f) - (apply(ops["J1"], f) * I + apply(ops["J2"], f)),
        "H3 = i J3": lambda f, u: apply(ops["H3"], f) - apply(ops["J3"], f) * I,
        "H4 = -(1 - i xi) J4": lambda f, u: apply(ops["H4"], f) + apply(ops["J4"], f) * GaussianRational(1, -xi),
        "[J1,J2] = J3": lambda f, u: commutator(ops["J1"], ops["J2"], f) - apply(ops["J3"], f),
        "[J2,J3] = J1": lambda f, u: commutator(ops["J2"], ops["J3"], f) - apply(ops["J1"], f),
        "[J3,J1] = J2": lambda f, u: commutator(ops["J3"], ops["J1"], f) - apply(ops["J2"], f),
    }
    counts = {name: [0, 0] for name in checks}
    for p, q, f in monomials(pmax, qmax):
        u = _half(q)
        for name, fn in checks.items():
            counts[name][0] += 1
            if not fn(f, u).is_zero():
                counts[name][1] += 1
    return [IdentityReport(name, c, fails) for name, (c, fails) in counts.items()]
