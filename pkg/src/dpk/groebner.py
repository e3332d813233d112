"""Buchberger engine plus the geometric certificates built on it.

Everything is exact.  projective_empty decides emptiness of the projective
(or weighted-projective) vanishing set over the algebraic closure through
the staircase finiteness criterion, then certifies it by explicitly
reducing a power of every variable to zero.  Smoothness of the surface
models is a Jacobian-ideal emptiness check; ideal intersections, colon
ideals and saturation use the standard auxiliary-variable eliminations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import (
    BudgetExceeded,
    DegenerateIntersection,
    DpkError,
    NotHomogeneous,
    UnexpectedDegree,
)
from .poly import MultiPoly

DEFAULT_PAIR_BUDGET = 200_000


# -- monomial orders --


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _lex_key(e):
    return tuple(e)


def _elim_key(e):
    # block order: first variable dominates, grevlex on the rest
    return (e[0],) + _grevlex_key(e[1:])


_ORDERS = {"grevlex": _grevlex_key, "lex": _lex_key, "elim": _elim_key}


@dataclass
class Ideal:
    generators: list
    monomial_order: str = "grevlex"

    def __post_init__(self):
        if self.monomial_order not in _ORDERS:
            raise DpkError(f"unknown monomial order {self.monomial_order}")
        gens = list(self.generators)
        if not gens:
            raise DpkError("ideal needs at least one generator")
        f0 = gens[0]
        for g in gens:
            if g.vars != f0.vars or g.field != f0.field:
                raise DpkError("generators must share field and variables")
        self.generators = gens

    @property
    def field(self):
        return self.generators[0].field

    @property
    def vars(self):
        return self.generators[0].vars


def _lm(terms, keyf):
    return max(terms, key=keyf)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _make_monic(terms, fld, keyf):
    lm = _lm(terms, keyf)
    c = terms[lm]
    if c == fld.one:
        return dict(terms)
    inv = fld.inv(c)
    return {e: fld.mul(inv, v) for e, v in terms.items()}


def _reduce_full(p, reducers, fld, keyf):
    """Full normal form of term-dict p against monic reducers [(lm, terms)]."""
    out = {}
    work = dict(p)
    while work:
        m = max(work, key=keyf)
        c = work.pop(m)
        hit = None
        for lm, terms in reducers:
            if _divides(lm, m):
                hit = (lm, terms)
                break
        if hit is None:
            out[m] = c
            continue
        lm, terms = hit
        shift = tuple(x - y for x, y in zip(m, lm))
        for e, v in terms.items():
            if e == lm:
                continue
            t = tuple(x + y for x, y in zip(e, shift))
            s = fld.sub(work.get(t, fld.zero), fld.mul(c, v))
            if fld.is_zero(s):
                work.pop(t, None)
            else:
                work[t] = s
    return out


def _spoly(t1, t2, fld, keyf):
    lm1, lm2 = _lm(t1, keyf), _lm(t2, keyf)
    l = _lcm(lm1, lm2)
    s1 = tuple(x - y for x, y in zip(l, lm1))
    s2 = tuple(x - y for x, y in zip(l, lm2))
    out = {}
    for e, v in t1.items():
        t = tuple(x + y for x, y in zip(e, s1))
        out[t] = v
    for e, v in t2.items():
        t = tuple(x + y for x, y in zip(e, s2))
        s = fld.sub(out.get(t, fld.zero), v)
        if fld.is_zero(s):
            out.pop(t, None)
        else:
            out[t] = s
    return out


def _buchberger(gens_terms, fld, keyf, budget):
    basis = []  # (lm, terms)
    alive = []
    pairs = []  # (sort_key, lcm, i, j)

    def sorted_reducers():
        idx = sorted((i for i in range(len(basis)) if alive[i]), key=lambda i: keyf(basis[i][0]))
        return [basis[i] for i in idx]

    def add_poly(terms):
        h = _reduce_full(terms, sorted_reducers(), fld, keyf)
        if not h:
            return
        h = _make_monic(h, fld, keyf)
        lmh = _lm(h, keyf)
        k = len(basis)
        # Gebauer-Moller pair update
        cand = [(i, _lcm(lmh, basis[i][0])) for i in range(k) if alive[i]]
        kept = []
        for pos, (i, l) in enumerate(cand):
            if _coprime(lmh, basis[i][0]):
                continue
            redundant = False
            for pos2, (j, l2) in enumerate(cand):
                if pos2 == pos or not _divides(l2, l):
                    continue
                if l2 != l or pos2 < pos:
                    redundant = True
                    break
            if not redundant:
                kept.append((i, l))
        surviving = []
        for key, l, i, j in pairs:
            if not _divides(lmh, l) or _lcm(basis[i][0], lmh) == l or _lcm(basis[j][0], lmh) == l:
                surviving.append((key, l, i, j))
        pairs.clear()
        pairs.extend(surviving)
        for i, l in kept:
            pairs.append((keyf(l), l, i, k))
        for i in range(k):
            if alive[i] and _divides(lmh, basis[i][0]):
                alive[i] = False
        basis.append((lmh, h))
        alive.append(True)

    for terms in gens_terms:
        if terms:
            add_poly(terms)
    processed = 0
    while pairs:
        pairs.sort(key=lambda p: (p[0], p[2], p[3]))
        _, l, i, j = pairs.pop(0)
        processed += 1
        if processed > budget:
            raise BudgetExceeded(f"Groebner pair budget {budget} exceeded")
        s = _spoly(basis[i][1], basis[j][1], fld, keyf)
        if s:
            add_poly(s)

    # final interreduction for the unique reduced basis
    final = [basis[i][1] for i in range(len(basis)) if alive[i]]
    changed = True
    while changed:
        changed = False
        final.sort(key=lambda t: keyf(_lm(t, keyf)))
        for i in range(len(final)):
            others = [
                (_lm(t, keyf), t) for j, t in enumerate(final) if j != i and t
            ]
            others.sort(key=lambda x: keyf(x[0]))
            red = _reduce_full(final[i], others, fld, keyf)
            if red != final[i]:
                changed = True
                final[i] = _make_monic(red, fld, keyf) if red else {}
        final = [t for t in final if t]
    final.sort(key=lambda t: keyf(_lm(t, keyf)))
    return final


def groebner_basis(ideal: Ideal, budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """Reduced Groebner basis; rerunning on the output is the identity."""
    fld = ideal.field
    keyf = _ORDERS[ideal.monomial_order]
    for g in ideal.generators:
        if g.is_zero():
            raise DpkError("zero generator in ideal")
    gens = sorted(
        (dict(g.terms) for g in ideal.generators),
        key=lambda t: (keyf(_lm(t, keyf)), len(t)),
    )
    final = _buchberger(gens, fld, keyf, budget)
    polys = [MultiPoly(fld, ideal.vars, t) for t in final]
    return Ideal(polys, ideal.monomial_order)


def normal_form(p: MultiPoly, basis: Ideal) -> MultiPoly:
    keyf = _ORDERS[basis.monomial_order]
    fld = basis.field
    reducers = sorted(
        ((_lm(g.terms, keyf), _make_monic(g.terms, fld, keyf)) for g in basis.generators),
        key=lambda x: keyf(x[0]),
    )
    red = _reduce_full(p.terms, reducers, fld, keyf)
    return MultiPoly(fld, p.vars, red)


def in_ideal(p: MultiPoly, ideal: Ideal) -> bool:
    gb = groebner_basis(ideal)
    return normal_form(p, gb).is_zero()


# -- emptiness and smoothness certificates --


def projective_empty(ideal: Ideal, weights=None, budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    """True iff the vanishing set in (weighted) projective space over the
    algebraic closure is empty.

    Decision: compute a reduced Groebner basis; the set is empty iff the
    quotient by the ideal is a finite-dimensional vector space (every
    variable has a pure-power leading term), in which case a power of each
    variable reduces to zero.  The certifying power is capped at
    3 * (sum of generator degrees); exceeding the cap raises rather than
    answering.
    """
    nvars = len(ideal.vars)
    if weights is None:
        weights = (1,) * nvars
    for g in ideal.generators:
        if not g.is_homogeneous(weights):
            raise NotHomogeneous(f"{g.to_string()} is not homogeneous for weights {weights}")
    gb = groebner_basis(ideal, budget=budget)
    keyf = _ORDERS[ideal.monomial_order]
    lms = [_lm(g.terms, keyf) for g in gb.generators]
    if any(sum(e) == 0 for e in lms):
        return True  # 1 in the ideal
    pure = {}
    for e in lms:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            i = nz[0]
            pure[i] = min(pure.get(i, e[nz[0]]), e[nz[0]])
    if len(pure) < nvars:
        return False
    cap = 3 * sum(g.total_degree() for g in ideal.generators)
    for i in range(nvars):
        n = _power_reducing_to_zero(gb, i, cap)
        if n is None:
            raise BudgetExceeded(
                f"variable {ideal.vars[i]} needs a power beyond the cap {cap}; inconclusive"
            )
    return True


def _power_reducing_to_zero(gb: Ideal, var_index: int, cap: int):
    fld = gb.field
    nvars = len(gb.vars)
    for n in range(1, cap + 1):
        e = [0] * nvars
        e[var_index] = n
        p = MultiPoly(fld, gb.vars, {tuple(e): fld.one})
        if normal_form(p, gb).is_zero():
            return n
    return None


def jacobian_ideal(f: MultiPoly) -> Ideal:
    gens = [f] + [f.derivative(v) for v in f.vars]
    gens = [g for g in gens if not g.is_zero()]
    return Ideal(gens, "grevlex")


def is_smooth_surface(f: MultiPoly, ambient: str = "P3", budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    """Smoothness of the surface f = 0 in P3 via the Jacobian criterion."""
    if ambient != "P3":
        raise DpkError(f"unsupported ambient {ambient}")
    if len(f.vars) != 4:
        raise DpkError("a surface in P3 needs exactly 4 variables")
    if f.is_zero() or not f.is_homogeneous():
        raise NotHomogeneous("surface form must be a nonzero homogeneous polynomial")
    return projective_empty(jacobian_ideal(f), budget=budget)


def smooth_quadric_intersection(q1: MultiPoly, q2: MultiPoly, budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    """Smoothness (and 2-dimensionality) of {q1 = q2 = 0} in P4.

    Emptiness of <q1, q2, all 2x2 Jacobian minors> forces the Jacobian to
    have rank 2 on every point of the intersection over the closure, so the
    scheme is a smooth surface wherever it has points.
    """
    if q1.vars != q2.vars or len(q1.vars) != 5:
        raise DpkError("quadric pair must share exactly 5 variables")
    for q in (q1, q2):
        if q.is_zero() or not q.is_homogeneous() or q.total_degree() != 2:
            raise NotHomogeneous("both forms must be nonzero quadrics")
    d1 = [q1.derivative(v) for v in q1.vars]
    d2 = [q2.derivative(v) for v in q2.vars]
    gens = [q1, q2]
    n = len(q1.vars)
    for i in range(n):
        for j in range(i + 1, n):
            m = d1[i] * d2[j] - d1[j] * d2[i]
            if not m.is_zero():
                gens.append(m)
    return projective_empty(Ideal(gens, "grevlex"), budget=budget)


def quasi_smooth_weighted(f: MultiPoly, weights, budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    """Smoothness of the affine cone away from the origin (weighted model)."""
    if f.is_zero() or not f.is_homogeneous(weights):
        raise NotHomogeneous(f"form must be weighted homogeneous for {weights}")
    return projective_empty(jacobian_ideal(f), weights=tuple(weights), budget=budget)


# -- ideal operations (intersection, colon, saturation) --


def _extend_ring(p: MultiPoly, extra: str):
    new_vars = (extra,) + p.vars
    terms = {(0,) + e: c for e, c in p.terms.items()}
    return MultiPoly(p.field, new_vars, terms)


def _t_poly(fld, vars_ext):
    e = (1,) + (0,) * (len(vars_ext) - 1)
    return MultiPoly(fld, vars_ext, {e: fld.one})


def intersect_ideals(i1: Ideal, i2: Ideal, budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """I1 cap I2 = (t*I1 + (1-t)*I2) cap k[x] via elimination of t."""
    fld = i1.field
    if i1.vars != i2.vars:
        raise DpkError("intersection requires a common variable set")
    extra = "t"
    while extra in i1.vars:
        extra += "_"
    vars_ext = (extra,) + i1.vars
    t = _t_poly(fld, vars_ext)
    one = MultiPoly.constant(fld, vars_ext, fld.one)
    gens = [t * _extend_ring(g, extra) for g in i1.generators]
    gens += [(one - t) * _extend_ring(g, extra) for g in i2.generators]
    gb = groebner_basis(Ideal(gens, "elim"), budget=budget)
    kept = []
    for g in gb.generators:
        if all(e[0] == 0 for e in g.terms):
            kept.append(MultiPoly(fld, i1.vars, {e[1:]: c for e, c in g.terms.items()}))
    if not kept:
        raise DpkError("empty intersection basis; inputs were not ideals of a common ring")
    return Ideal(kept, "grevlex")


def _exact_divide(p: MultiPoly, g: MultiPoly) -> MultiPoly:
    fld = p.field
    keyf = _grevlex_key
    lm_g = _lm(g.terms, keyf)
    lc_g = g.terms[lm_g]
    work = dict(p.terms)
    quot = {}
    while work:
        m = max(work, key=keyf)
        c = work.pop(m)
        if not _divides(lm_g, m):
            raise DpkError("division is not exact")
        shift = tuple(x - y for x, y in zip(m, lm_g))
        q = fld.div(c, lc_g)
        quot[shift] = q
        for e, v in g.terms.items():
            if e == lm_g:
                continue
            tgt = tuple(x + y for x, y in zip(e, shift))
            s = fld.sub(work.get(tgt, fld.zero), fld.mul(q, v))
            if fld.is_zero(s):
                work.pop(tgt, None)
            else:
                work[tgt] = s
    return MultiPoly(fld, p.vars, quot)


def colon_by_poly(ideal: Ideal, g: MultiPoly, budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """(I : g) computed as (I cap <g>) / g."""
    inter = intersect_ideals(ideal, Ideal([g], "grevlex"), budget=budget)
    return Ideal([_exact_divide(p, g) for p in inter.generators], "grevlex")


def colon_ideal(ideal: Ideal, j: Ideal, budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """(I : J) = intersection of (I : g) over generators g of J."""
    out = None
    for g in j.generators:
        q = colon_by_poly(ideal, g, budget=budget)
        out = q if out is None else intersect_ideals(out, q, budget=budget)
    return out


def ideals_equal(i1: Ideal, i2: Ideal, budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    g1 = groebner_basis(Ideal(i1.generators, "grevlex"), budget=budget)
    g2 = groebner_basis(Ideal(i2.generators, "grevlex"), budget=budget)
    return [p.terms for p in g1.generators] == [p.terms for p in g2.generators]


def saturate(ideal: Ideal, j: Ideal, max_iter: int = 50, budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """(I : J^inf) by iterating the colon ideal until it stabilizes."""
    cur = Ideal(ideal.generators, "grevlex")
    for _ in range(max_iter):
        nxt = colon_ideal(cur, j, budget=budget)
        if ideals_equal(cur, nxt, budget=budget):
            return groebner_basis(cur)
        cur = nxt
    raise BudgetExceeded(f"saturation did not stabilize within {max_iter} colon steps")


# -- Hilbert function helpers (staircase of a homogeneous reduced GB) --


def _monomials_of_degree(nvars, t):
    for bars in itertools.combinations(range(t + nvars - 1), nvars - 1):
        out = []
        prev = -1
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(t + nvars - 2 - prev)
        yield tuple(out)


def hilbert_function(gb: Ideal, t: int) -> int:
    """dim of degree-t part of R/I from the leading-term staircase."""
    keyf = _ORDERS[gb.monomial_order]
    lms = [_lm(g.terms, keyf) for g in gb.generators]
    n = 0
    for m in _monomials_of_degree(len(gb.vars), t):
        if not any(_divides(l, m) for l in lms):
            n += 1
    return n


# -- the degree-9 general position verification --


@dataclass
class GeneralPositionReport:
    residual_degree: int
    rank: int
    hyperplane_dim: int
    general_position: bool
    saturation_rounds: int = dc_field(default=0)

    def to_json(self):
        return {
            "residual_degree": self.residual_degree,
            "rank": self.rank,
            "hyperplane_dim": self.hyperplane_dim,
            "general_position": self.general_position,
        }


def veronese_general_position(c1: MultiPoly, c2: MultiPoly) -> GeneralPositionReport:
    """Residual of {c1 = c2 = 0} after removing the coordinate points.

    c1, c2 are cubics on P2 vanishing at the three coordinate points.  The
    residual scheme is checked to be 0-dimensional of degree 6, and the
    rank is the number of independent conditions the six residual points
    impose on cubics, i.e. on hyperplanes through the 3-uple embedding in
    P9.  Rank 6 (hyperplane space of dimension 4) is general position.
    """
    if c1.vars != c2.vars or len(c1.vars) != 3:
        raise DpkError("expected two cubics in the same 3 variables")
    for c in (c1, c2):
        if c.is_zero() or not c.is_homogeneous() or c.total_degree() != 3:
            raise NotHomogeneous("inputs must be nonzero cubic forms")
        for j in range(3):
            e = [0, 0, 0]
            e[j] = 3
            if not c.field.is_zero(c.coefficient(e)):
                raise DpkError("cubics must vanish at the three coordinate points")
    fld = c1.field
    vs = c1.vars
    ideal = Ideal([c1, c2], "grevlex")

    def mono(i, j):
        e = [0, 0, 0]
        e[i] += 1
        e[j] += 1
        return MultiPoly(fld, vs, {tuple(e): fld.one})

    coord_pts = Ideal([mono(0, 1), mono(0, 2), mono(1, 2)], "grevlex")
    # dimension guard before saturating: proportional cubics have a common factor
    gb0 = groebner_basis(ideal)
    hf_hi = [hilbert_function(gb0, t) for t in (9, 10, 11)]
    if not (hf_hi[0] == hf_hi[1] == hf_hi[2]):
        raise DegenerateIntersection("intersection of the two cubics is not 0-dimensional")
    rounds = 0
    cur = ideal
    while True:
        nxt = colon_ideal(cur, coord_pts)
        rounds += 1
        if ideals_equal(cur, nxt):
            break
        cur = nxt
        if rounds > 20:
            raise BudgetExceeded("saturation by the coordinate points did not stabilize")
    sat = groebner_basis(cur)
    hf = [hilbert_function(sat, t) for t in range(0, 12)]
    if hf[10] != hf[11]:
        raise DegenerateIntersection("residual scheme is not 0-dimensional")
    degree = hf[10]
    if degree != 6:
        raise UnexpectedDegree(f"residual degree {degree}, expected 6")
    rank = hf[3]
    return GeneralPositionReport(
        residual_degree=degree,
        rank=rank,
        hyperplane_dim=10 - rank,
        general_position=(rank == 6),
        saturation_rounds=rounds,
    )
