"""Point counting for anticanonical del Pezzo models over finite fields.

Points of weighted projective space are F_q-points of the variety, not
naive scaling orbits: two nonzero tuples u, v are identified when
v_i = c^{w_i/g} u_i for some c in F_q^* with g = gcd of the weights on the
support of u.  (A Frobenius-stable orbit under the full scaling action of
the closure always contains a rational tuple, and rational tuples in one
orbit are related exactly this way; the cone point of P(1,1,2) over GF(3)
is one point, not two.)  With that identification #P(w)(F_q) equals
#P^n(F_q), which the tests pin.

Counts of smooth del Pezzo models satisfy #X(F_q) = q^2 + q*t + 1 with t
the Frobenius trace on the geometric Picard lattice; the congruence
#X = 1 mod q and the membership of t - 1 in the Weyl trace set on the
orthogonal complement of K are the checkable consequences.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass

from .errors import BudgetExceeded, ConstructionFailed, DpkError, NotHomogeneous
from .finitefield import QQ, FiniteField
from .groebner import (
    is_smooth_surface,
    quasi_smooth_weighted,
    smooth_quadric_intersection,
)
from .poly import MultiPoly, reduce_mod_p

KIND_INFO = {
    "cubic": {"vars": ("w", "x", "y", "z"), "weights": (1, 1, 1, 1), "degree": 3, "forms": 1},
    "quadric_pair": {
        "vars": ("v", "w", "x", "y", "z"),
        "weights": (1, 1, 1, 1, 1),
        "degree": 2,
        "forms": 2,
    },
    "weighted_quartic": {
        "vars": ("w", "x", "y", "z"),
        "weights": (2, 1, 1, 1),
        "degree": 4,
        "forms": 1,
    },
    "weighted_sextic": {
        "vars": ("w", "x", "y", "z"),
        "weights": (3, 2, 1, 1),
        "degree": 6,
        "forms": 1,
    },
}

KIND_SURFACE_DEGREE = {"cubic": 3, "quadric_pair": 4, "weighted_quartic": 2, "weighted_sextic": 1}


def default_budget() -> int:
    env = os.environ.get("DPK_BUDGET")
    return int(env) if env else 100_000_000


@dataclass
class SurfaceModel:
    kind: str
    field: FiniteField | None  # None: integer coefficients (rational field carrier)
    forms: list

    def __post_init__(self):
        if self.kind not in KIND_INFO:
            raise DpkError(f"unknown surface kind {self.kind}")
        info = KIND_INFO[self.kind]
        if len(self.forms) != info["forms"]:
            raise DpkError(f"{self.kind} needs {info['forms']} form(s)")
        for f in self.forms:
            if f.vars != info["vars"]:
                raise DpkError(f"{self.kind} uses variables {info['vars']}")
            if f.is_zero() or not f.is_homogeneous(info["weights"]):
                raise NotHomogeneous(f"form must be homogeneous for weights {info['weights']}")
            if f.weighted_degree(info["weights"]) != info["degree"]:
                raise NotHomogeneous(
                    f"{self.kind} needs weighted degree {info['degree']}, got "
                    f"{f.weighted_degree(info['weights'])}"
                )
        if self.field is None:
            for f in self.forms:
                for c in f.terms.values():
                    if getattr(c, "denominator", 1) != 1:
                        raise DpkError("integer model has a non-integer coefficient")

    @property
    def weights(self):
        return KIND_INFO[self.kind]["weights"]

    @property
    def vars(self):
        return KIND_INFO[self.kind]["vars"]

    def reduce(self, field: FiniteField) -> "SurfaceModel":
        """Reduce integer coefficients into GF(p); identity if already there."""
        if self.field is not None:
            if self.field != field:
                raise DpkError("surface is already defined over a different field")
            return self
        return SurfaceModel(self.kind, field, [reduce_mod_p(f, field) for f in self.forms])

    def to_json(self):
        return {
            "schema": 1,
            "kind": self.kind,
            "field": self.field.label() if self.field else "ZZ",
            "forms": [f.to_string() for f in self.forms],
        }

    @classmethod
    def from_json(cls, data) -> "SurfaceModel":
        kind = data["kind"]
        info = KIND_INFO[kind]
        fl = data["field"]
        if fl == "ZZ":
            field = None
            coeff_field = QQ
        else:
            field = FiniteField(fl["p"], fl.get("k", 1), tuple(fl["modulus"]) if "modulus" in fl else None)
            coeff_field = field
        forms = [MultiPoly.from_string(coeff_field, info["vars"], s) for s in data["forms"]]
        return cls(kind, field, forms)


@dataclass
class PointCount:
    q: int
    count: int
    trace: int | None

    def to_json(self):
        return {"q": self.q, "count": self.count, "trace": self.trace}


# -- weighted projective point enumeration --

_POINT_CACHE: dict = {}


def enumerate_projective_points(field: FiniteField, weights, budget: int | None = None):
    """Canonical representatives of the F_q-points of P(weights).

    Deterministic: each point is represented by the minimum tuple in its
    equivalence class.  Raises BudgetExceeded when q^(n+1) outgrows the
    enumeration budget (DPK_BUDGET overrides the default).
    """
    weights = tuple(int(w) for w in weights)
    if any(w < 1 for w in weights):
        raise DpkError("weights must be positive")
    key = (field, weights)
    if key in _POINT_CACHE:
        return _POINT_CACHE[key]
    if budget is None:
        budget = default_budget()
    q = field.q
    n = len(weights)
    if q**n > budget:
        raise BudgetExceeded(f"{q}^{n} affine tuples exceed budget {budget}")
    pts = []
    for tup in itertools.product(range(q), repeat=n):
        if not any(tup):
            continue
        if tup == _canonical_rep(field, weights, tup):
            pts.append(tup)
    _POINT_CACHE[key] = pts
    return pts


def _canonical_rep(field: FiniteField, weights, tup):
    support = [i for i, x in enumerate(tup) if x]
    g = 0
    for i in support:
        g = math.gcd(g, weights[i])
    best = tup
    for c in field.units():
        scaled = tuple(
            field.mul(field.pow(c, weights[i] // g), tup[i]) if tup[i] else 0 for i in range(len(tup))
        )
        if scaled < best:
            best = scaled
    return best


def _compiled_forms(surface: SurfaceModel):
    return [list(f.terms.items()) for f in surface.forms]


def count_points(surface: SurfaceModel, field: FiniteField, budget: int | None = None) -> PointCount:
    """Exact number of F_q-points of the model; integer models are reduced."""
    s = surface.reduce(field)
    pts = enumerate_projective_points(field, s.weights, budget)
    q = field.q
    compiled = _compiled_forms(s)
    if field.k == 1:
        p = field.p
        count = 0
        pow_tab = [[pow(a, e, p) for e in range(7)] for a in range(p)]
        for tup in pts:
            ok = True
            for terms in compiled:
                acc = 0
                for exps, c in terms:
                    v = c
                    for x, e in zip(tup, exps):
                        if e:
                            v = v * pow_tab[x][e] % p
                    acc = (acc + v) % p
                if acc:
                    ok = False
                    break
            if ok:
                count += 1
    else:
        count = 0
        for tup in pts:
            if all(field.is_zero(f.evaluate(tup)) for f in s.forms):
                count += 1
    trace = None
    if (count - q * q - 1) % q == 0:
        trace = (count - q * q - 1) // q
    return PointCount(q=q, count=count, trace=trace)


def is_smooth_model(surface: SurfaceModel) -> bool:
    """Del Pezzo smoothness certificate appropriate to the model kind.

    Weighted models must also avoid the singular points of their ambient
    space: the w^2 coefficient (degree 2 and 1) and the x^3 coefficient
    (degree 1) have to be nonzero.
    """
    if surface.field is None:
        raise DpkError("smoothness of integer models is certified via reduction")
    f = surface.forms[0]
    if surface.kind == "cubic":
        return is_smooth_surface(f)
    if surface.kind == "quadric_pair":
        return smooth_quadric_intersection(surface.forms[0], surface.forms[1])
    fld = surface.field
    if surface.kind == "weighted_quartic":
        if fld.is_zero(f.coefficient((2, 0, 0, 0))):
            return False
        return quasi_smooth_weighted(f, (2, 1, 1, 1))
    if surface.kind == "weighted_sextic":
        if fld.is_zero(f.coefficient((2, 0, 0, 0))) or fld.is_zero(f.coefficient((0, 3, 0, 0))):
            return False
        return quasi_smooth_weighted(f, (3, 2, 1, 1))
    raise DpkError(f"unknown kind {surface.kind}")


def trace_consistency(surface: SurfaceModel, field: FiniteField, weyl_elements) -> bool:
    """Whether the Frobenius trace is realized by a supplied Weyl element.

    The count gives the trace t on the geometric Picard lattice; t - 1 is
    the trace on the orthogonal complement of K, which must agree with
    tr(M) - 1 for some element M of the supplied list.
    """
    pc = count_points(surface, field)
    if pc.trace is None:
        return False
    d = KIND_SURFACE_DEGREE[surface.kind]
    t_perp = pc.trace - 1
    if abs(t_perp) > 9 - d:
        return False
    traces = set()
    for m in weyl_elements:
        if hasattr(m, "trace"):
            traces.add(m.trace() - 1)
        else:
            traces.add(sum(m[i][i] for i in range(len(m))) - 1)
    return t_perp in traces


# -- random model generation (seeded, rejection-sampled for smoothness) --


def monomials_of_weighted_degree(weights, degree):
    n = len(weights)
    out = []

    def rec(i, rem, cur):
        if i == n:
            if rem == 0:
                out.append(tuple(cur))
            return
        w = weights[i]
        for e in range(rem // w + 1):
            cur.append(e)
            rec(i + 1, rem - e * w, cur)
            cur.pop()

    rec(0, degree, [])
    return sorted(out)


def random_surface(kind: str, field: FiniteField, seed: int) -> SurfaceModel:
    info = KIND_INFO[kind]
    rng = random.Random(("surface", kind, field.p, field.k, seed).__repr__())
    monos = monomials_of_weighted_degree(info["weights"], info["degree"])
    forms = []
    for _ in range(info["forms"]):
        terms = {}
        for e in monos:
            c = rng.randrange(field.q)
            if c:
                terms[e] = c
        forms.append(MultiPoly(field, info["vars"], terms))
    try:
        return SurfaceModel(kind, field, forms)
    except NotHomogeneous:  # all-zero draw; caller retries with the next seed
        raise ConstructionFailed("degenerate zero draw")


def random_smooth_surface(
    kind: str, field: FiniteField, seed: int, max_tries: int = 2000
) -> SurfaceModel:
    """First smooth del Pezzo model in the deterministic seed sequence."""
    for k in range(max_tries):
        try:
            s = random_surface(kind, field, seed * 10007 + k)
        except ConstructionFailed:
            continue
        try:
            if is_smooth_model(s):
                return s
        except NotHomogeneous:
            continue
    raise ConstructionFailed(
        f"no smooth {kind} over GF({field.q}) within {max_tries} tries from seed {seed}"
    )
