"""First cohomology of cyclic groups acting on Picard lattices.

For a finite-order lattice automorphism g, H^1(<g>, L) = ker(N)/im(g - 1)
with N = 1 + g + ... + g^{n-1}.  The computation is exact: a primitive
basis of ker(N) comes out of the Smith normal form of N, the matrix of
(g - 1) is rewritten in that basis, and its Smith form gives the invariant
factors.  A nontrivial value certifies that a surface whose Frobenius (or
Galois) action realizes g is not rational.

The fast triage path used by the big scans relies on the identity
H^1(<g>, L) = torsion(L / im(g - 1)): for x in ker N, n*x = sum (1 - g^i)x
lies in im(g - 1), and conversely m*x in im(g - 1) forces N*x = 0.  Both
paths are computed for every nontrivial certificate and cross-checked
exhaustively for the fully enumerable groups in the test suite.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InternalError
from .intlinalg import (
    _snf_full,
    identity,
    matmul,
    smith_normal_form,
    snf_diagonal,
)
from .lattice import PicLattice
from .weyl import LatticeAutomorphism, closure_matrices

__all__ = [
    "FiniteAbelianGroup",
    "IrrationalityCertificate",
    "smith_normal_form",
    "h1_cyclic",
    "h1_torsion_coker",
    "kperp_basis",
    "scan_h1",
    "deep_scan",
    "DeepScanResult",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Abelian group in invariant-factor form; () is the trivial group."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError(f"invariant factors must be >= 2, got {fs}")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError(f"invariant factors must form a divisibility chain: {fs}")

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def order(self) -> int:
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    def __str__(self):
        if self.is_trivial:
            return "0"
        return " x ".join(f"Z/{f}" for f in self.invariant_factors)

    def to_json(self):
        return list(self.invariant_factors)


TRIVIAL_GROUP = FiniteAbelianGroup(())


def _as_matrix(g) -> list[list[int]]:
    if isinstance(g, LatticeAutomorphism):
        return [list(r) for r in g.matrix]
    return [list(r) for r in g]


def _matrix_order(m: list[list[int]], bound: int = 1000) -> int:
    p = m
    n = len(m)
    for k in range(1, bound + 1):
        if all(p[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)):
            return k
        p = matmul(p, m)
    raise InternalError("matrix order exceeds bound; not finite order?")


def kperp_basis(lattice: PicLattice) -> list[list[int]]:
    """Primitive basis (as columns) of the orthogonal complement of K."""
    k = lattice.canonical
    row = [[lattice.pairing(_unit(lattice.rank, j), k) for j in range(lattice.rank)]]
    from .intlinalg import kernel_basis

    return kernel_basis(row)


def _unit(n, j):
    e = [0] * n
    e[j] = 1
    return e


def restrict_to_sublattice(g, basis_cols: list[list[int]]) -> list[list[int]]:
    """Matrix of g on the sublattice spanned by basis_cols (must be stable)."""
    from .intlinalg import solve_exact

    m = _as_matrix(g)
    n = len(m)
    s = len(basis_cols)
    cols = []
    for j in range(s):
        img = [sum(m[i][t] * basis_cols[j][t] for t in range(n)) for i in range(n)]
        cols.append(solve_exact(basis_cols, img))
    return [[cols[j][i] for j in range(s)] for i in range(s)]


def h1_cyclic(g, sublattice: list[list[int]] | None = None) -> FiniteAbelianGroup:
    """H^1 of the cyclic group generated by g acting on Z^r.

    With sublattice (a list of basis columns, e.g. kperp_basis), the action
    is first restricted there.  Exact at every step.
    """
    m = _as_matrix(g)
    if sublattice is not None:
        m = restrict_to_sublattice(m, sublattice)
    r = len(m)
    n = _matrix_order(m)
    # norm matrix N = sum of powers
    norm = identity(r)
    p = m
    for _ in range(n - 1):
        norm = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(norm, p)]
        p = matmul(p, m)
    _, s, _, vinv = _snf_full(norm)
    kernel_rows = [j for j in range(r) if s[j][j] == 0]
    gm1 = [[m[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    coords = matmul(vinv, gm1)
    for j in range(r):
        if j not in kernel_rows and any(coords[j]):
            raise InternalError("im(g-1) escaped ker(N); norm computation is wrong")
    c = [coords[j] for j in kernel_rows]
    if not c:
        return TRIVIAL_GROUP
    diag = snf_diagonal(c)
    if sum(1 for d in diag if d != 0) != len(kernel_rows):
        raise InternalError("H^1 has a free part; g cannot have finite order")
    return FiniteAbelianGroup(tuple(d for d in diag if d > 1))


def h1_torsion_coker(g) -> FiniteAbelianGroup:
    """H^1 via the torsion of coker(g - 1); agrees with h1_cyclic."""
    m = _as_matrix(g)
    r = len(m)
    gm1 = [[m[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    diag = snf_diagonal(gm1)
    return FiniteAbelianGroup(tuple(d for d in diag if d > 1))


@dataclass(frozen=True)
class IrrationalityCertificate:
    """Per-element record: nontrivial H^1 obstructs rationality."""

    degree: int
    element: tuple  # reflection word if known, else the matrix rows
    h1: FiniteAbelianGroup
    conclusion: str  # "NotRational" | "Inconclusive"

    def to_json(self):
        return {
            "degree": self.degree,
            "element": [list(r) for r in self.element]
            if self.element and isinstance(self.element[0], tuple)
            else list(self.element),
            "h1": self.h1.to_json(),
            "conclusion": self.conclusion,
        }


def make_certificate(degree: int, element, h1: FiniteAbelianGroup) -> IrrationalityCertificate:
    conclusion = "Inconclusive" if h1.is_trivial else "NotRational"
    return IrrationalityCertificate(degree, element, h1, conclusion)


def scan_h1(lattice: PicLattice, elements) -> list[IrrationalityCertificate]:
    """One certificate per element, in input order."""
    out = []
    for g in elements:
        h1 = h1_cyclic(g)
        element = g.word if isinstance(g, LatticeAutomorphism) and g.word else (
            g.matrix if isinstance(g, LatticeAutomorphism) else tuple(tuple(r) for r in g)
        )
        out.append(make_certificate(lattice.degree, element, h1))
    return out


def any_nontrivial(certificates) -> bool:
    return any(c.conclusion == "NotRational" for c in certificates)


# -- full-group scan on packed matrices (used for degree >= 3 and --deep) --


def scan_group_h1(lattice: PicLattice, mats: np.ndarray, progress=None):
    """Histogram of H^1 over an array of group elements.

    Triage uses the torsion-coker identity; every element with nontrivial
    triage is recomputed through the ker(N)/im(g-1) path and the two must
    agree.  Returns (histogram dict factors->count, nontrivial matrices
    list, their factors list).
    """
    hist: dict[tuple[int, ...], int] = {}
    nontrivial_mats = []
    nontrivial_factors = []
    n = len(mats)
    for i in range(n):
        m = mats[i].tolist()
        fast = h1_torsion_coker(m)
        if not fast.is_trivial:
            full = h1_cyclic(m)
            if full != fast:
                raise InternalError(
                    f"H^1 paths disagree: coker gives {fast}, ker(N)/im gives {full}"
                )
            nontrivial_mats.append(m)
            nontrivial_factors.append(fast.invariant_factors)
        hist[fast.invariant_factors] = hist.get(fast.invariant_factors, 0) + 1
        if progress and (i + 1) % progress == 0:
            print(f"  scanned {i + 1}/{n}", flush=True)
    return hist, nontrivial_mats, nontrivial_factors


@dataclass
class DeepScanResult:
    degree: int
    group_order: int
    histogram: dict[tuple[int, ...], int]
    nontrivial_count: int
    witness_matrix: list[list[int]] | None
    witness_h1: tuple[int, ...] | None
    from_cache: bool
    cache_path: str | None

    def to_json(self):
        return {
            "degree": self.degree,
            "group_order": self.group_order,
            "histogram": sorted(
                ([list(k), v] for k, v in self.histogram.items()), key=lambda kv: kv[0]
            ),
            "nontrivial_count": self.nontrivial_count,
            "witness_matrix": self.witness_matrix,
            "witness_h1": list(self.witness_h1) if self.witness_h1 else None,
            "from_cache": self.from_cache,
        }


def _cache_dir() -> Path:
    env = os.environ.get("DPK_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "dpk"


def deep_scan(
    lattice: PicLattice,
    limit: int = 3_000_000,
    cache: bool = True,
    progress: int | None = None,
) -> DeepScanResult:
    """Full H^1 scan of W(R_d), persisted under a generator-content hash.

    Intended for degree 2 (2,903,040 elements, minutes of work); smaller
    degrees also pass through here and are quick.
    """
    gens = sorted(g.matrix for g in _simple_reflection_cache(lattice))
    key = hashlib.sha256(
        json.dumps({"degree": lattice.degree, "gens": gens, "algo": 2}).encode()
    ).hexdigest()[:24]
    cdir = _cache_dir()
    jpath = cdir / f"h1scan-{key}.json"
    npath = cdir / f"h1scan-{key}-nontrivial.npz"
    if cache and jpath.exists():
        data = json.loads(jpath.read_text())
        return DeepScanResult(
            degree=data["degree"],
            group_order=data["group_order"],
            histogram={tuple(k): v for k, v in data["histogram"]},
            nontrivial_count=data["nontrivial_count"],
            witness_matrix=data["witness_matrix"],
            witness_h1=tuple(data["witness_h1"]) if data["witness_h1"] else None,
            from_cache=True,
            cache_path=str(jpath),
        )
    mats = closure_matrices(lattice, limit=limit)
    hist, nmats, nfactors = scan_group_h1(lattice, mats, progress=progress)
    nontrivial_count = sum(v for k, v in hist.items() if k)
    witness_matrix = nmats[0] if nmats else None
    witness_h1 = nfactors[0] if nfactors else None
    result = DeepScanResult(
        degree=lattice.degree,
        group_order=len(mats),
        histogram=hist,
        nontrivial_count=nontrivial_count,
        witness_matrix=witness_matrix,
        witness_h1=witness_h1,
        from_cache=False,
        cache_path=str(jpath) if cache else None,
    )
    if cache:
        cdir.mkdir(parents=True, exist_ok=True)
        jpath.write_text(json.dumps(result.to_json()))
        np.savez_compressed(
            npath,
            mats=np.array(nmats, dtype=np.int16) if nmats else np.zeros((0, 0, 0), np.int16),
            factors=np.array(
                [list(f) + [0] * (lattice.rank - len(f)) for f in nfactors], dtype=np.int64
            )
            if nfactors
            else np.zeros((0, 0), np.int64),
        )
    return result


def load_nontrivial_cache(lattice: PicLattice):
    """(matrices, factors) saved by deep_scan for this lattice, or None."""
    gens = sorted(g.matrix for g in _simple_reflection_cache(lattice))
    key = hashlib.sha256(
        json.dumps({"degree": lattice.degree, "gens": gens, "algo": 2}).encode()
    ).hexdigest()[:24]
    npath = _cache_dir() / f"h1scan-{key}-nontrivial.npz"
    if not npath.exists():
        return None
    data = np.load(npath)
    mats = data["mats"]
    factors = [tuple(int(x) for x in row if x) for row in data["factors"]]
    return mats, factors


_REFLECTION_CACHE: dict[int, list] = {}


def _simple_reflection_cache(lattice: PicLattice):
    if lattice.degree not in _REFLECTION_CACHE:
        from .weyl import simple_reflections

        _REFLECTION_CACHE[lattice.degree] = simple_reflections(lattice)
    return _REFLECTION_CACHE[lattice.degree]
