"""Etale algebras with declared place-splitting data and central simple
algebras as local-invariant vectors; the degree-6 minimal point degree.

No actual number fields appear: a place of the base field is a name, a
factor of an etale algebra declares, per base place, the (e, f) pairs of
the places above it, and a central simple algebra over a factor is the
vector of its local invariants in Q/Z.  Restriction multiplies an
invariant by e*f, corestriction sums invariants over the places above.

Composita are handled place by place with the tame-generic rule: a local
extension (e1, f1) tensored against (e2, f2) splits into
gcd(e1,e2)*gcd(f1,f2) components, each of relative degree
(e1/gcd(e1,e2)) * (f1/gcd(f1,f2)) over the second factor.  For unramified
data (the only kind the classical constructions use) this is exact; for
tame ramification it is the generic case.

A degree-6 del Pezzo surface is the triple (B, Q, KL): it has a rational
point over an extension M exactly when both B and Q split after tensoring
with M, so the minimal point degree is found by searching quadratic and
cubic splitting patterns at the finitely many places carrying nonzero
invariants.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import DpkError, IncompleteData, InternalError, RankError


def qz(value) -> Fraction:
    """Element of Q/Z as a reduced fraction in [0, 1)."""
    fr = Fraction(value)
    return fr - (fr.numerator // fr.denominator)


@dataclass(frozen=True)
class Place:
    name: str
    archimedean: bool = False


class PlaceSet:
    def __init__(self, places):
        self.places = list(places)
        names = [p.name for p in self.places]
        if len(set(names)) != len(names):
            raise DpkError("place names must be unique")
        self._by_name = {p.name: p for p in self.places}

    def __iter__(self):
        return iter(self.places)

    def __contains__(self, name):
        return name in self._by_name

    def get(self, name) -> Place:
        if name not in self._by_name:
            raise DpkError(f"unknown place {name!r}")
        return self._by_name[name]

    def to_json(self):
        return [{"name": p.name, "archimedean": p.archimedean} for p in self.places]


@dataclass
class EtaleAlgebra:
    """Product of field factors with declared splitting data.

    splitting[(factor_index, place_name)] is the list of (e, f) pairs of
    the places of that factor above the base place; their e*f must sum to
    the factor degree.
    """

    factor_degrees: tuple
    splitting: dict
    places: PlaceSet
    name: str = "E"

    def __post_init__(self):
        self.factor_degrees = tuple(int(d) for d in self.factor_degrees)
        if any(d < 1 for d in self.factor_degrees):
            raise DpkError("factor degrees must be positive")
        norm = {}
        for (fi, pl), pairs in self.splitting.items():
            if not 0 <= fi < len(self.factor_degrees):
                raise DpkError(f"factor index {fi} out of range")
            self.places.get(pl)
            pairs = [(int(e), int(f)) for e, f in pairs]
            if any(e < 1 or f < 1 for e, f in pairs):
                raise DpkError("ramification and residue degrees must be positive")
            if sum(e * f for e, f in pairs) != self.factor_degrees[fi]:
                raise DpkError(
                    f"sum of e*f above {pl} in factor {fi} must be {self.factor_degrees[fi]}"
                )
            if self.places.get(pl).archimedean and any(ef not in ((1, 1), (1, 2)) for ef in pairs):
                raise DpkError("archimedean places only extend as (1,1) or (1,2)")
            norm[(fi, pl)] = pairs
        self.splitting = norm

    @property
    def degree(self) -> int:
        return sum(self.factor_degrees)

    def places_above(self, place_name: str):
        """[(factor, index, e, f)] for every declared place above place_name."""
        out = []
        for fi in range(len(self.factor_degrees)):
            key = (fi, place_name)
            if key not in self.splitting:
                raise IncompleteData(
                    f"{self.name}: no splitting data for factor {fi} at place {place_name!r}"
                )
            for idx, (e, f) in enumerate(self.splitting[key]):
                out.append((fi, idx, e, f))
        return out

    def has_data_at(self, place_name: str) -> bool:
        return all((fi, place_name) in self.splitting for fi in range(len(self.factor_degrees)))

    def to_json(self):
        return {
            "name": self.name,
            "factor_degrees": list(self.factor_degrees),
            "splitting": [
                {"factor": fi, "place": pl, "above": [list(x) for x in pairs]}
                for (fi, pl), pairs in sorted(self.splitting.items())
            ],
        }


def _tensor_components(e1, f1, e2, f2):
    """Components of a local (e1,f1)-extension tensored over a (e2,f2) one:
    (count, relative degree over the second)."""
    ge = math.gcd(e1, e2)
    gf = math.gcd(f1, f2)
    return ge * gf, (e1 // ge) * (f1 // gf)


@dataclass
class CSAInvariants:
    """Central simple algebra over an etale algebra, by local invariants.

    base None means an algebra over the ground field k itself.  rank 9
    bounds invariant orders by 3, rank 4 by 2.  invariants maps upper-place
    keys (factor, place_name, index) -- or place names when base is None --
    to elements of Q/Z; omitted places carry invariant 0.
    """

    rank: int
    invariants: dict
    places: PlaceSet
    base: EtaleAlgebra | None = None
    model: str = "number"

    def __post_init__(self):
        if self.rank not in (4, 9):
            raise RankError(f"rank must be 4 (quaternion) or 9, got {self.rank}")
        if self.model not in ("number", "local"):
            raise DpkError("model must be 'number' or 'local'")
        bound = 2 if self.rank == 4 else 3
        norm = {}
        for key, val in self.invariants.items():
            fr = qz(val)
            if fr == 0:
                continue
            if (fr * bound).denominator != 1:
                raise DpkError(f"invariant {fr} has order not dividing {bound}")
            if self.base is None:
                pl = self.places.get(key)
                if pl.archimedean and fr != Fraction(1, 2):
                    raise DpkError("archimedean invariants lie in {0, 1/2}")
                norm[key] = fr
            else:
                fi, pl_name, idx = key
                pairs = self.base.splitting.get((fi, pl_name))
                if pairs is None or idx >= len(pairs):
                    raise DpkError(f"invariant at undeclared place {key}")
                pl = self.places.get(pl_name)
                if pl.archimedean:
                    e, f = pairs[idx]
                    if f == 2:
                        raise DpkError("complex places have trivial Brauer group")
                    if fr != Fraction(1, 2):
                        raise DpkError("archimedean invariants lie in {0, 1/2}")
                norm[(fi, pl_name, idx)] = fr
        self.invariants = norm
        if self.model == "number":
            self._check_reciprocity()

    def _check_reciprocity(self):
        if self.base is None:
            total = sum(self.invariants.values(), Fraction(0))
            if qz(total) != 0:
                raise DpkError("invariants over k must sum to 0 in Q/Z")
            return
        for fi in range(len(self.base.factor_degrees)):
            total = sum(
                (v for (f2, _, _), v in self.invariants.items() if f2 == fi), Fraction(0)
            )
            if qz(total) != 0:
                raise DpkError(f"invariants of factor {fi} must sum to 0 in Q/Z")

    @property
    def is_split(self) -> bool:
        return not self.invariants

    def nonzero_base_places(self):
        if self.base is None:
            return sorted(self.invariants)
        return sorted({pl for (_, pl, _) in self.invariants})

    def to_json(self):
        if self.base is None:
            inv = [{"place": k, "value": str(v)} for k, v in sorted(self.invariants.items())]
        else:
            inv = [
                {"factor": fi, "place": pl, "above": idx, "value": str(v)}
                for (fi, pl, idx), v in sorted(self.invariants.items())
            ]
        return {"rank": self.rank, "invariants": inv}


def restrict(a: CSAInvariants, ext: EtaleAlgebra) -> CSAInvariants:
    """Base change of an algebra over k along k -> ext.

    The invariant at an upper place with data (e, f) is e*f times the one
    below, mod 1.
    """
    if a.base is not None:
        raise DpkError("restrict expects an algebra over the ground field")
    inv = {}
    for pl_name, val in a.invariants.items():
        for fi, idx, e, f in ext.places_above(pl_name):
            v = qz(e * f * val)
            if v != 0:
                inv[(fi, pl_name, idx)] = v
    return CSAInvariants(
        rank=a.rank, invariants=inv, places=a.places, base=ext, model=a.model
    )


def corestrict(b: CSAInvariants) -> CSAInvariants:
    """Transfer down to k: the invariant at a base place is the sum of the
    invariants above it."""
    if b.base is None:
        return b
    inv: dict = {}
    for (fi, pl_name, idx), val in b.invariants.items():
        inv[pl_name] = qz(inv.get(pl_name, Fraction(0)) + val)
    inv = {k: v for k, v in inv.items() if v != 0}
    return CSAInvariants(rank=b.rank, invariants=inv, places=b.places, base=None, model=b.model)


def splits_after_tensor(b: CSAInvariants, other: EtaleAlgebra) -> bool:
    """Whether b (over its base) splits after tensoring with other.

    For every base-algebra place w carrying a nonzero invariant, every
    component of other tensor (base)_w must have relative degree killing
    the invariant.
    """
    for key, val in b.invariants.items():
        if b.base is None:
            pl_name = key
            e_w, f_w = 1, 1
        else:
            fi, pl_name, idx = key
            e_w, f_w = b.base.splitting[(fi, pl_name)][idx]
        for _, _, e_v, f_v in other.places_above(pl_name):
            count, deg = _tensor_components(e_v, f_v, e_w, f_w)
            if qz(deg * val) != 0:
                return False
    return True


def in_c1(b: CSAInvariants, k_alg: EtaleAlgebra, l_alg: EtaleAlgebra) -> bool:
    """Rank-9 algebras over K split by KL with split corestriction."""
    if b.rank != 9:
        raise RankError("C1 membership is for rank-9 algebras")
    if b.base is not k_alg:
        raise DpkError("algebra must live over K")
    return splits_after_tensor(b, l_alg) and corestrict(b).is_split


def in_c2(q: CSAInvariants, k_alg: EtaleAlgebra, l_alg: EtaleAlgebra) -> bool:
    """Rank-4 algebras over L split by KL with split corestriction."""
    if q.rank != 4:
        raise RankError("C2 membership is for rank-4 algebras")
    if q.base is not l_alg:
        raise DpkError("algebra must live over L")
    return splits_after_tensor(q, k_alg) and corestrict(q).is_split


@dataclass
class BlunkTriple:
    k_algebra: EtaleAlgebra  # degree 2
    l_algebra: EtaleAlgebra  # degree 3
    b: CSAInvariants  # rank 9 over K
    q: CSAInvariants  # rank 4 over L
    model: str = "number"

    def __post_init__(self):
        if self.model not in ("number", "local"):
            raise DpkError("model must be 'number' or 'local'")
        if self.k_algebra.degree != 2:
            raise DpkError("K must have degree 2")
        if self.l_algebra.degree != 3:
            raise DpkError("L must have degree 3")
        if self.model == "local":
            pls = list(self.k_algebra.places)
            if len(pls) != 1 or pls[0].archimedean:
                raise DpkError("local model uses exactly one nonarchimedean place")
        if not in_c1(self.b, self.k_algebra, self.l_algebra):
            raise DpkError("B is not in C1 (split by KL with split corestriction)")
        if not in_c2(self.q, self.k_algebra, self.l_algebra):
            raise DpkError("Q is not in C2 (split by KL with split corestriction)")

    @property
    def places(self) -> PlaceSet:
        return self.b.places

    def to_json(self):
        return {
            "schema": 1,
            "model": self.model,
            "places": self.places.to_json(),
            "K": self.k_algebra.to_json(),
            "L": self.l_algebra.to_json(),
            "B": self.b.to_json(),
            "Q": self.q.to_json(),
        }


def _field_extension(places: PlaceSet, degree: int, pattern: dict, name: str) -> EtaleAlgebra:
    """Single-factor etale algebra with the given local patterns."""
    splitting = {(0, pl): pairs for pl, pairs in pattern.items()}
    return EtaleAlgebra(
        factor_degrees=(degree,), splitting=splitting, places=places, name=name
    )


def _local_patterns(degree: int, place: Place, model: str):
    """Splitting patterns a degree-2 or -3 field extension can have."""
    if place.archimedean:
        if degree == 2:
            return [[(1, 1), (1, 1)], [(1, 2)]]
        return [[(1, 1)] * 3, [(1, 1), (1, 2)]]
    if model == "local":
        # a field extension of a local field has a single place
        if degree == 2:
            return [[(1, 2)], [(2, 1)]]
        return [[(1, 3)], [(3, 1)]]
    if degree == 2:
        return [[(1, 1), (1, 1)], [(1, 2)], [(2, 1)]]
    return [
        [(1, 1), (1, 1), (1, 1)],
        [(1, 1), (1, 2)],
        [(1, 3)],
        [(1, 1), (2, 1)],
        [(3, 1)],
    ]


def minimal_point_degree(triple: BlunkTriple) -> int:
    """Minimal degree of a point on the degree-6 surface of the triple.

    1 iff both algebras split; otherwise search field extensions of degree
    2 then 3 over the declared places carrying nonzero invariants (any
    such finite prescription is realizable by an actual extension); else
    6.  The local model can never reach 6: a quaternion obstruction over a
    local field dies over a quadratic extension.
    """
    b, q = triple.b, triple.q
    if b.is_split and q.is_split:
        return 1
    relevant = sorted(set(b.nonzero_base_places()) | set(q.nonzero_base_places()))
    places = triple.places
    for degree, answer in ((2, 2), (3, 3)):
        options = [_local_patterns(degree, places.get(pl), triple.model) for pl in relevant]
        for combo in itertools.product(*options):
            pattern = dict(zip(relevant, combo))
            ext = _field_extension(places, degree, pattern, name=f"M{degree}")
            if splits_after_tensor(b, ext) and splits_after_tensor(q, ext):
                return answer
    if triple.model == "local":
        raise InternalError(
            "local model reached minimal degree 6; the triple should have been rejected"
        )
    return 6


# -- JSON config (CLI surface) --


def triple_from_json(data) -> BlunkTriple:
    model = data.get("model", "number")
    places = PlaceSet(
        Place(p["name"], bool(p.get("archimedean", False))) for p in data["places"]
    )

    def load_etale(d, name):
        splitting = {}
        for row in d["splitting"]:
            splitting[(row["factor"], row["place"])] = [tuple(x) for x in row["above"]]
        return EtaleAlgebra(
            factor_degrees=tuple(d["factor_degrees"]),
            splitting=splitting,
            places=places,
            name=d.get("name", name),
        )

    k_alg = load_etale(data["K"], "K")
    l_alg = load_etale(data["L"], "L")

    def load_csa(d, base):
        inv = {}
        for row in d["invariants"]:
            inv[(row["factor"], row["place"], row["above"])] = Fraction(row["value"])
        return CSAInvariants(
            rank=d["rank"], invariants=inv, places=places, base=base, model=model
        )

    b = load_csa(data["B"], k_alg)
    q = load_csa(data["Q"], l_alg)
    return BlunkTriple(k_algebra=k_alg, l_algebra=l_alg, b=b, q=q, model=model)
