"""Picard lattices of del Pezzo surfaces.

The lattice of a degree-d surface (blow-up model) is Z^{10-d} with the
intersection form diag(1, -1, ..., -1) in the basis (H, E_1, ..., E_{9-d}),
canonical class (-3, 1, ..., 1).  Exceptional classes are the solutions of
(v, v) = (v, K) = -1, the roots of the lattice are the solutions of
(v, v) = -2, (v, K) = 0.

Enumeration is exhaustive over a self-certifying coefficient box: the box
|v_0| <= 3 + margin, |v_i| <= |v_0| + margin is grown until enlarging the
margin by one produces no new solutions.  (Cauchy-Schwarz on the negative
definite part bounds all solutions, so the loop terminates immediately at
the default margin; the growth check is kept as a runtime certificate.)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimensionError, InvalidClass, UnsupportedDegree

ROOT_SYSTEM_LABELS = {6: "A2xA1", 5: "A4", 4: "D5", 3: "E6", 2: "E7", 1: "E8"}


@dataclass(frozen=True)
class DivisorClass:
    """Integer vector in the basis (H, E_1, ..., E_{9-d})."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self):
        return f"DivisorClass{self.coeffs}"


class PicLattice:
    """Z^{10-d} with form diag(1, -1, ..., -1) and K = (-3, 1, ..., 1)."""

    def __init__(self, degree: int):
        if not 1 <= degree <= 8:
            raise UnsupportedDegree(f"degree must be 1..8, got {degree}")
        self.degree = degree
        self.rank = 10 - degree
        self.gram = [
            [(1 if i == 0 else -1) if i == j else 0 for j in range(self.rank)]
            for i in range(self.rank)
        ]
        self.canonical = DivisorClass((-3,) + (1,) * (self.rank - 1))

    def __repr__(self):
        return f"PicLattice(degree={self.degree})"

    def divisor(self, coeffs) -> DivisorClass:
        v = DivisorClass(coeffs)
        if len(v) != self.rank:
            raise DimensionError(f"expected length {self.rank}, got {len(v)}")
        return v

    def pairing(self, a, b) -> int:
        """Intersection number a^T * gram * b."""
        a = self.divisor(a)
        b = self.divisor(b)
        return a[0] * b[0] - sum(x * y for x, y in zip(a.coeffs[1:], b.coeffs[1:]))

    # -- enumeration ----------------------------------------------------

    def _solutions(self, self_int: int, k_int: int, margin: int) -> list[tuple[int, ...]]:
        """All v in the margin box with (v,v)=self_int and (v,K)=k_int."""
        r = self.rank - 1
        out = []
        for a in range(-(3 + margin), 4 + margin):
            q_total = a * a - self_int  # required sum of squares of v_1..v_r
            s_total = -3 * a - k_int  # required sum of v_1..v_r
            if q_total < 0:
                continue
            bound = abs(a) + margin
            for tail in _bounded_multisets(r, q_total, s_total, bound):
                for perm in set(itertools.permutations(tail)):
                    out.append((a,) + perm)
        out.sort()
        return out

    def _certified_solutions(self, self_int: int, k_int: int) -> list[tuple[int, ...]]:
        margin = 3
        sols = self._solutions(self_int, k_int, margin)
        while True:
            bigger = self._solutions(self_int, k_int, margin + 1)
            if bigger == sols:
                return sols
            sols = bigger
            margin += 1

    def exceptional_classes(self) -> list[DivisorClass]:
        """All classes with (v,v) = (v,K) = -1, sorted lexicographically."""
        return [DivisorClass(v) for v in self._certified_solutions(-1, -1)]

    def roots(self) -> list[DivisorClass]:
        """All classes with (v,v) = -2, (v,K) = 0, sorted lexicographically."""
        if self.degree > 6:
            raise UnsupportedDegree(
                f"no root system in degree {self.degree}; only degrees 1..6 carry one"
            )
        return [DivisorClass(v) for v in self._certified_solutions(-2, 0)]

    def simple_roots(self) -> list[DivisorClass]:
        """E_1-E_2, ..., E_{8-d}-E_{9-d}, H-E_1-E_2-E_3."""
        if self.degree > 6:
            raise UnsupportedDegree(
                f"no root system in degree {self.degree}; only degrees 1..6 carry one"
            )
        r = self.rank
        out = []
        for i in range(1, r - 1):
            v = [0] * r
            v[i] = 1
            v[i + 1] = -1
            out.append(DivisorClass(v))
        h123 = [1, -1, -1, -1] + [0] * (r - 4)
        out.append(DivisorClass(h123))
        return out

    def root_system(self) -> "RootSystemData":
        return RootSystemData(
            type_label=ROOT_SYSTEM_LABELS[self.degree],
            roots=self.roots(),
            simple_roots=self.simple_roots(),
        )

    def exceptional_adjacency(self, e) -> list[DivisorClass]:
        """Exceptional classes f != e with (e, f) >= 1."""
        e = self.divisor(e)
        classes = self.exceptional_classes()
        if e.coeffs not in {c.coeffs for c in classes}:
            raise InvalidClass(f"{e} is not an exceptional class of degree {self.degree}")
        return [f for f in classes if f.coeffs != e.coeffs and self.pairing(e, f) >= 1]


def _bounded_multisets(r, q_total, s_total, bound):
    """Weakly decreasing integer r-tuples with given sum of squares and sum.

    All entries lie in [-bound, bound].  Pruning uses the exact square
    budget, the achievable-sum range, and Cauchy-Schwarz on the remainder.
    """
    out = []
    tail = []

    def rec(k, hi, q_rem, s_rem):
        if k == 0:
            if q_rem == 0 and s_rem == 0:
                out.append(tuple(tail))
            return
        if s_rem * s_rem > k * q_rem:
            return
        for v in range(min(hi, bound), -bound - 1, -1):
            q2 = q_rem - v * v
            if q2 < 0:
                if v > 0:
                    continue
                break
            s2 = s_rem - v
            # remaining entries are <= v and >= -bound
            if s2 > (k - 1) * v or s2 < -(k - 1) * bound:
                continue
            tail.append(v)
            rec(k - 1, v, q2, s2)
            tail.pop()

    rec(r, bound, q_total, s_total)
    return out


@dataclass(frozen=True)
class RootSystemData:
    type_label: str
    roots: list[DivisorClass]
    simple_roots: list[DivisorClass]


class QuadricD8Lattice:
    """Rank-2 lattice of the product-of-lines form of a degree-8 surface.

    Gram [[0, 1], [1, 0]], canonical (-2, -2).  It has no exceptional
    classes; it exists so that the classifier's degree-8 branch has a
    concrete lattice to reason about.
    """

    degree = 8
    rank = 2

    def __init__(self):
        self.gram = [[0, 1], [1, 0]]
        self.canonical = DivisorClass((-2, -2))

    def pairing(self, a, b) -> int:
        a = DivisorClass(a)
        b = DivisorClass(b)
        if len(a) != 2 or len(b) != 2:
            raise DimensionError("rank-2 lattice expects length-2 vectors")
        return a[0] * b[1] + a[1] * b[0]

    def exceptional_classes(self) -> list[DivisorClass]:
        # (v, v) = 2 v0 v1 is even, never -1
        return []

    def automorphisms(self) -> list[list[list[int]]]:
        """Lattice automorphisms fixing the canonical class: id and swap."""
        return [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
