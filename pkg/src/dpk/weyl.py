"""Weyl groups of the root systems living in del Pezzo Picard lattices.

Elements are integer matrices acting on column vectors in the (H, E_i)
basis; every element preserves the intersection form and fixes the
canonical class.  Groups are generated by the simple reflections and
enumerated by breadth-first closure.  The closure itself runs on numpy
int16 arrays (entries of these matrices are tiny; every round is
overflow-checked), but the public API hands out exact Python integers.
"""

from __future__ import annotations

import random
from functools import cached_property

import numpy as np

from .errors import InternalError, InvalidRoot, InvalidWord, TooLarge
from .intlinalg import identity, matmul, mat_vec
from .lattice import DivisorClass, PicLattice

WEYL_ORDERS = {6: 12, 5: 120, 4: 1920, 3: 51840, 2: 2903040, 1: 696729600}

_DEFAULT_LIMIT = 200_000
_ENTRY_BOUND = 1000  # sanity bound for int16 closure arithmetic


class LatticeAutomorphism:
    """Integer matrix preserving the form and fixing the canonical class."""

    __slots__ = ("matrix", "lattice", "word", "__dict__")

    def __init__(self, lattice: PicLattice, matrix, word=None, _validate=True):
        self.lattice = lattice
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self.word = tuple(word) if word is not None else None
        if _validate:
            self._check()

    def _check(self):
        g = self.lattice.gram
        m = [list(r) for r in self.matrix]
        mt = [list(r) for r in zip(*m)]
        if matmul(matmul(mt, g), m) != g:
            raise InternalError("matrix does not preserve the intersection form")
        k = list(self.lattice.canonical.coeffs)
        if mat_vec(m, k) != k:
            raise InternalError("matrix does not fix the canonical class")

    @cached_property
    def order(self) -> int:
        m = [list(r) for r in self.matrix]
        p = m
        for n in range(1, 1000):
            if all(p[i][j] == (1 if i == j else 0) for i in range(len(p)) for j in range(len(p))):
                return n
            p = matmul(p, m)
        raise InternalError("element order exceeds 1000; not a Weyl element")

    def apply(self, v) -> DivisorClass:
        v = self.lattice.divisor(v)
        return DivisorClass(mat_vec([list(r) for r in self.matrix], list(v.coeffs)))

    def trace(self) -> int:
        return sum(self.matrix[i][i] for i in range(len(self.matrix)))

    def compose(self, other: "LatticeAutomorphism") -> "LatticeAutomorphism":
        prod = matmul([list(r) for r in self.matrix], [list(r) for r in other.matrix])
        return LatticeAutomorphism(self.lattice, prod, _validate=False)

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def __eq__(self, other):
        return isinstance(other, LatticeAutomorphism) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def to_json(self):
        out = {"matrix": [list(r) for r in self.matrix]}
        if self.word is not None:
            out["word"] = list(self.word)
        return out

    def __repr__(self):
        return f"LatticeAutomorphism({self.matrix})"


def reflection(lattice: PicLattice, root) -> LatticeAutomorphism:
    """Reflection s(x) = x + (x, root) * root in a (-2)-class."""
    root = lattice.divisor(root)
    if lattice.pairing(root, root) != -2:
        raise InvalidRoot(f"{root} has self-intersection != -2")
    r = lattice.rank
    cols = []
    for j in range(r):
        e = [0] * r
        e[j] = 1
        c = lattice.pairing(e, root)
        cols.append([e[i] + c * root[i] for i in range(r)])
    m = [[cols[j][i] for j in range(r)] for i in range(r)]
    return LatticeAutomorphism(lattice, m)


def simple_reflections(lattice: PicLattice) -> list[LatticeAutomorphism]:
    return [reflection(lattice, rt) for rt in lattice.simple_roots()]


def element_from_word(lattice: PicLattice, word) -> LatticeAutomorphism:
    """Product of simple reflections, word applied left to right."""
    gens = simple_reflections(lattice)
    m = identity(lattice.rank)
    for idx in word:
        if not 0 <= idx < len(gens):
            raise InvalidWord(f"generator index {idx} out of range 0..{len(gens) - 1}")
        m = matmul(m, [list(r) for r in gens[idx].matrix])
    return LatticeAutomorphism(lattice, m, word=word, _validate=False)


def sample_elements(lattice: PicLattice, count: int, seed: int, word_length: int = 40):
    """Deterministic pseudo-random reflection products with recorded words."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    n_gens = len(lattice.simple_roots())
    out = []
    for _ in range(count):
        word = tuple(rng.randrange(n_gens) for _ in range(word_length))
        out.append(element_from_word(lattice, word))
    return out


def closure_matrices(lattice: PicLattice, limit: int | None = None) -> np.ndarray:
    """Breadth-first closure of the simple reflections as an int16 array.

    Returns shape (order, rank, rank), sorted lexicographically by row-major
    entries.  Refuses degree 1 outright and degree 2 unless the limit has
    been raised above |W(E7)|.
    """
    degree = lattice.degree
    if limit is None:
        limit = _DEFAULT_LIMIT
    if degree == 1:
        raise TooLarge("full enumeration of W(E8) (696,729,600 elements) is refused")
    if WEYL_ORDERS[degree] > limit:
        raise TooLarge(
            f"W order {WEYL_ORDERS[degree]} exceeds limit {limit}; raise the limit explicitly"
        )
    gens = [np.array(g.matrix, dtype=np.int16) for g in simple_reflections(lattice)]
    return _closure(gens, lattice.rank, limit)


def _closure(gens: list[np.ndarray], rank: int, limit: int) -> np.ndarray:
    nbytes = rank * rank * 2
    void = np.dtype((np.void, nbytes))

    def as_void(arr):
        flat = np.ascontiguousarray(arr.reshape(len(arr), -1))
        return flat.view(void).reshape(len(arr))

    known_mats = np.eye(rank, dtype=np.int16)[None, :, :]
    known_keys = as_void(known_mats)
    order = np.argsort(known_keys)
    known_keys = known_keys[order]
    known_mats = known_mats[order]
    frontier = known_mats
    while len(frontier):
        prods = []
        for g in gens:
            p = np.matmul(frontier.astype(np.int32), g.astype(np.int32))
            if np.abs(p).max() > _ENTRY_BOUND:
                raise InternalError("closure entries exceeded the int16 safety bound")
            prods.append(p.astype(np.int16))
        cand = np.concatenate(prods)
        cand_keys = as_void(cand)
        cand_keys, idx = np.unique(cand_keys, return_index=True)
        cand = cand[idx]
        pos = np.searchsorted(known_keys, cand_keys)
        pos_clip = np.minimum(pos, len(known_keys) - 1)
        fresh = known_keys[pos_clip] != cand_keys
        frontier = cand[fresh]
        if not len(frontier):
            break
        known_mats = np.concatenate([known_mats, frontier])
        known_keys = np.concatenate([known_keys, cand_keys[fresh]])
        order = np.argsort(known_keys)
        known_keys = known_keys[order]
        known_mats = known_mats[order]
        if len(known_mats) > limit:
            raise TooLarge(f"closure exceeded limit {limit}")
    # canonical order: numeric lexicographic on row-major entries
    flat = known_mats.reshape(len(known_mats), -1)
    order = np.lexsort(flat.T[::-1])
    return known_mats[order]


def generate_group(lattice: PicLattice, limit: int | None = None) -> list[LatticeAutomorphism]:
    """All elements of W(R_d), in a deterministic canonical order."""
    mats = closure_matrices(lattice, limit)
    _bulk_validate(lattice, mats)
    return [LatticeAutomorphism(lattice, m.tolist(), _validate=False) for m in mats]


def _bulk_validate(lattice: PicLattice, mats: np.ndarray):
    g = np.array(lattice.gram, dtype=np.int64)
    arr = mats.astype(np.int64)
    lhs = np.einsum("nji,jk,nkl->nil", arr, g, arr)
    if not (lhs == g[None, :, :]).all():
        raise InternalError("closure produced a matrix not preserving the form")
    k = np.array(lattice.canonical.coeffs, dtype=np.int64)
    if not (arr @ k == k[None, :]).all():
        raise InternalError("closure produced a matrix moving the canonical class")
