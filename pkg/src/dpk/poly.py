"""Exact multivariate polynomials over the rationals or a finite field.

Terms are stored as a map from exponent tuples to nonzero coefficients.
The coefficient field is either QQ (Fraction arithmetic) or a FiniteField;
both satisfy the same small protocol (add/sub/mul/inv/from_int/...).

Input syntax: `3*x^2*y - w^3` with explicit `*` between factors, `^` for
powers, and integer or rational (`3/2`) coefficients.  Implicit
multiplication is rejected: `xy` only parses if `xy` itself is a declared
variable.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DpkError, NotHomogeneous
from .finitefield import QQ, FiniteField


class MultiPoly:
    __slots__ = ("field", "vars", "terms")

    def __init__(self, field, variables, terms=None):
        self.field = field
        self.vars = tuple(variables)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != len(self.vars):
                    raise DpkError("exponent vector length does not match variables")
                if not field.is_zero(c):
                    clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors --

    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables, {})

    @classmethod
    def constant(cls, field, variables, c):
        return cls(field, variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def variable(cls, field, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(field, variables, {tuple(e): field.one})

    @classmethod
    def from_string(cls, field, variables, text: str) -> "MultiPoly":
        return _parse(field, tuple(variables), text)

    # -- predicates and data --

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def weighted_degree(self, weights) -> int:
        if not self.terms:
            return -1
        return max(sum(w * x for w, x in zip(weights, e)) for e in self.terms)

    def is_homogeneous(self, weights=None) -> bool:
        if not self.terms:
            return True
        if weights is None:
            weights = (1,) * len(self.vars)
        degs = {sum(w * x for w, x in zip(weights, e)) for e in self.terms}
        return len(degs) == 1

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    # -- ring operations --

    def _compat(self, other):
        if self.field is not other.field and self.field != other.field:
            raise DpkError("mixed coefficient fields")
        if self.vars != other.vars:
            raise DpkError("mixed variable sets")

    def __add__(self, other):
        self._compat(other)
        f = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(terms.get(e, f.zero), c)
            if f.is_zero(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(f, self.vars, terms)

    def __neg__(self):
        f = self.field
        return MultiPoly(f, self.vars, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._compat(other)
        f = self.field
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(terms.get(e, f.zero), f.mul(c1, c2))
                if f.is_zero(s):
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return MultiPoly(f, self.vars, terms)

    def scale(self, c):
        f = self.field
        if f.is_zero(c):
            return MultiPoly.zero(f, self.vars)
        return MultiPoly(f, self.vars, {e: f.mul(c, v) for e, v in self.terms.items()})

    def mul_monomial(self, exps, c):
        f = self.field
        exps = tuple(exps)
        return MultiPoly(
            f,
            self.vars,
            {tuple(a + b for a, b in zip(e, exps)): f.mul(c, v) for e, v in self.terms.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus and evaluation --

    def derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        f = self.field
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            coef = f.mul(c, f.from_int(e[i]))
            if f.is_zero(coef):
                continue
            e2 = list(e)
            e2[i] -= 1
            terms[tuple(e2)] = f.add(terms.get(tuple(e2), f.zero), coef)
        return MultiPoly(f, self.vars, terms)

    def evaluate(self, point):
        f = self.field
        total = f.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = f.mul(v, f.pow(x, k) if hasattr(f, "pow") else x**k)
            total = f.add(total, v)
        return total

    def substitute_linear(self, matrix) -> "MultiPoly":
        """p(A x): variable i is replaced by sum_j A[i][j] x_j."""
        f = self.field
        forms = []
        for i in range(len(self.vars)):
            t = {}
            for j in range(len(self.vars)):
                c = matrix[i][j]
                if not f.is_zero(c):
                    e = [0] * len(self.vars)
                    e[j] = 1
                    t[tuple(e)] = c
            forms.append(MultiPoly(f, self.vars, t))
        out = MultiPoly.zero(f, self.vars)
        for e, c in self.terms.items():
            term = MultiPoly.constant(f, self.vars, c)
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * forms[i]
            out = out + term
        return out

    def map_coefficients(self, target_field, convert) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            v = convert(c)
            if not target_field.is_zero(v):
                terms[e] = v
        return MultiPoly(target_field, self.vars, terms)

    # -- rendering --

    def to_string(self) -> str:
        """Strict grammar: explicit '*', '^'; parseable by from_string."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_display_key):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            cs = _coeff_str(self.field, c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if not factors:
                body = cs
            elif cs == "1":
                body = "*".join(factors)
            else:
                body = "*".join([cs] + factors)
            parts.append(("- " if neg else "+ ") + body)
        out = " ".join(parts)
        if out.startswith("+ "):
            out = out[2:]
        elif out.startswith("- "):
            out = "-" + out[2:]
        return out

    def to_display(self) -> str:
        """Compact rendering with juxtaposed variables, e.g. 11w^3 + 8x^2y."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_display_key):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            cs = _coeff_str(self.field, c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if not factors:
                body = cs
            elif cs == "1":
                body = "".join(factors)
            else:
                body = cs + "".join(factors)
            parts.append(("- " if neg else "+ ") + body)
        out = " ".join(parts)
        if out.startswith("+ "):
            out = out[2:]
        elif out.startswith("- "):
            out = "-" + out[2:]
        return out

    def __repr__(self):
        return f"MultiPoly({self.to_string()})"


def _display_key(exps):
    # graded by nothing: sort by reversed exponent tuple; this reproduces
    # the conventional reading order w^3, x^3, x^2y, xy^2, y^3, x^2z, ...
    return tuple(reversed(exps))


def _coeff_str(field, c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(/)|(\+)|(-)|(\()|(\)))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise DpkError(f"cannot tokenize polynomial near {rest[:20]!r}")
        pos = m.end()
        groups = m.groups()
        if groups[0]:
            out.append(("num", int(groups[0])))
        elif groups[1]:
            out.append(("name", groups[1]))
        else:
            sym = next(s for s in groups[2:] if s)
            out.append((sym, sym))
    out.append(("end", None))
    return out


def _parse(field, variables, text):
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0]

    def take(kind=None):
        nonlocal pos
        t = tokens[pos]
        if kind and t[0] != kind:
            raise DpkError(f"expected {kind}, found {t[0]} in polynomial")
        pos += 1
        return t

    def parse_factor():
        kind = peek()
        if kind == "num":
            n = take()[1]
            if peek() == "/":
                take()
                d = take("num")[1]
                if d == 0:
                    raise DpkError("zero denominator")
                return ("coef", Fraction(n, d))
            return ("coef", Fraction(n))
        if kind == "name":
            name = take()[1]
            if name not in variables:
                raise DpkError(
                    f"unknown variable {name!r}; implicit multiplication is not supported"
                )
            e = 1
            if peek() == "^":
                take()
                e = take("num")[1]
            return ("var", (name, e))
        raise DpkError(f"unexpected token {kind} in polynomial")

    def parse_term():
        coef = Fraction(1)
        exps = [0] * len(variables)
        while True:
            what, val = parse_factor()
            if what == "coef":
                coef *= val
            else:
                name, e = val
                exps[variables.index(name)] += e
            if peek() == "*":
                take()
                continue
            if peek() in ("num", "name"):
                raise DpkError("implicit multiplication is not supported; use '*'")
            break
        return coef, tuple(exps)

    poly_terms = {}

    def add_term(coef, exps, sign):
        coef = coef * sign
        c = field.from_fraction(coef) if hasattr(field, "from_fraction") else coef
        cur = poly_terms.get(exps, field.zero)
        s = field.add(cur, c)
        if field.is_zero(s):
            poly_terms.pop(exps, None)
        else:
            poly_terms[exps] = s

    sign = 1
    if peek() == "-":
        take()
        sign = -1
    elif peek() == "+":
        take()
    coef, exps = parse_term()
    add_term(coef, exps, sign)
    while peek() != "end":
        op = take()
        if op[0] not in ("+", "-"):
            raise DpkError(f"expected + or - between terms, found {op[0]}")
        sign = 1 if op[0] == "+" else -1
        coef, exps = parse_term()
        add_term(coef, exps, sign)
    return MultiPoly(field, variables, poly_terms)


def reduce_mod_p(poly: MultiPoly, field: FiniteField) -> MultiPoly:
    """Integer/rational coefficients reduced into a prime field."""
    def conv(c):
        if isinstance(c, Fraction):
            return field.from_fraction(c)
        return field.from_int(int(c))

    return poly.map_coefficients(field, conv)
