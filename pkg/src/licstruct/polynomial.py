"""Sparse multivariate polynomials with exact rational coefficients.

Small and deliberately limited: enough for generating and manipulating the
quadratic torsion equations.  Monomials are exponent tuples over an ordered
tuple of variable names; the monomial order is graded lexicographic in that
variable order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class Polynomial:
    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        clean = {}
        for mon, coeff in (terms or {}).items():
            mon = tuple(mon)
            if len(mon) != len(self.variables):
                raise ValueError("monomial length does not match variables")
            coeff = _frac(coeff)
            if coeff:
                clean[mon] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> Polynomial:
        return cls(variables)

    @classmethod
    def constant(cls, variables, value) -> Polynomial:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables, name) -> Polynomial:
        variables = tuple(variables)
        mon = [0] * len(variables)
        mon[variables.index(name)] = 1
        return cls(variables, {tuple(mon): 1})

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise ValueError("polynomials over different variables")
            return other
        return Polynomial.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for mon, c in other.terms.items():
            out[mon] = out.get(mon, 0) + c
        return Polynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _frac(other)
            return Polynomial(self.variables, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = tuple(a + b for a, b in zip(m1, m2))
                out[mon] = out.get(mon, 0) + c1 * c2
        return Polynomial(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(self.variables, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def used_variables(self) -> list[str]:
        used = set()
        for mon in self.terms:
            used.update(i for i, e in enumerate(mon) if e)
        return [self.variables[i] for i in sorted(used)]

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in decreasing graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            return None
        return self.sorted_terms()[0]

    def content(self) -> Fraction:
        """Positive rational g with self/g primitive integral."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = 0
        for a in nums:
            g = math.gcd(g, a)
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        return Fraction(g, lcm)

    def clear_denominators(self) -> tuple[Polynomial, Fraction]:
        """(scale * self, scale) with the smallest positive scale making coefficients integral."""
        lcm = 1
        for c in self.terms.values():
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        return self * lcm, Fraction(lcm)

    def normalized(self) -> Polynomial:
        """Primitive integral multiple with positive leading coefficient."""
        if not self.terms:
            return self
        p = self * (1 / self.content())
        if p.leading_term()[1] < 0:
            p = -p
        return p

    def equal_up_to_sign(self, other: Polynomial) -> bool:
        return self.normalized() == other.normalized()

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, values):
        """Value at a point given as a sequence (variable order) or a name mapping."""
        if isinstance(values, dict):
            values = [values[v] for v in self.variables]
        total = 0
        for mon, c in self.terms.items():
            term = c
            for x, e in zip(values, mon):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def compile(self):
        """(exponents, coefficients) arrays for fast float evaluation."""
        if not self.terms:
            return np.zeros((0, len(self.variables)), dtype=int), np.zeros(0)
        mons = list(self.terms)
        return np.array(mons, dtype=int), np.array([float(self.terms[m]) for m in mons])

    def substitute(self, mapping: dict) -> Polynomial:
        """Replace variables by rationals or polynomials (over the same variables)."""
        idx = {name: i for i, name in enumerate(self.variables)}
        subs = {idx[k]: v for k, v in mapping.items()}
        out = Polynomial.zero(self.variables)
        for mon, c in self.terms.items():
            keep = list(mon)
            term = Polynomial.constant(self.variables, c)
            for i, v in subs.items():
                e = mon[i]
                if e:
                    keep[i] = 0
                    term = term * (v**e if isinstance(v, Polynomial) else Polynomial.constant(self.variables, _frac(v) ** e))
            term = term * Polynomial(self.variables, {tuple(keep): 1})
            out = out + term
        return out

    def coefficient(self, name: str, power: int = 1) -> Polynomial:
        """Coefficient polynomial of name**power (other powers of name dropped)."""
        i = self.variables.index(name)
        out = {}
        for mon, c in self.terms.items():
            if mon[i] == power:
                m = list(mon)
                m[i] = 0
                out[tuple(m)] = c
        return Polynomial(self.variables, out)

    # -- printing -----------------------------------------------------------

    def monomial_dict(self, mon) -> dict[str, int]:
        return {self.variables[i]: e for i, e in enumerate(mon) if e}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mon, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(mon):
                if e == 1:
                    factors.append(self.variables[i])
                elif e:
                    factors.append(f"{self.variables[i]}^{e}")
            body = "*".join(factors)
            mag = abs(c)
            if body and mag == 1:
                text = body
            elif body:
                text = f"{mag}*{body}"
            else:
                text = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"
