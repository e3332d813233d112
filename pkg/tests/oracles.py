"""Independent oracles used by the test suite.

These deliberately avoid the library's code paths: invariant factors come
from a plain textbook elimination (plus a gcd-of-minors variant for tiny
matrices), and lattice class enumeration is an unpruned numpy box scan
(classical combinatorial families where a full scan is infeasible).
"""

from __future__ import annotations

import itertools
import math

import numpy as np


# -- invariant factors, naive elimination --


def naive_invariant_factors(mat) -> list[int]:
    """Diagonalize by simple row/column Euclid steps, then regroup the
    diagonal into a divisibility chain via prime factorization."""
    a = [list(map(int, row)) for row in mat]
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    t = 0
    diag = []
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            # clear column t
            for i in range(t + 1, rows):
                while a[i][t]:
                    if abs(a[i][t]) < abs(a[t][t]):
                        a[t], a[i] = a[i], a[t]
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            # clear row t
            row_dirty = False
            for j in range(t + 1, cols):
                while a[t][j]:
                    if abs(a[t][j]) < abs(a[t][t]):
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        row_dirty = True
                    q = a[t][j] // a[t][t]
                    for r in a:
                        r[j] -= q * r[t]
            if not row_dirty and all(a[i][t] == 0 for i in range(t + 1, rows)):
                break
        # divisibility sweep
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            continue
        diag.append(abs(a[t][t]))
        t += 1
    return _regroup(diag)


def _regroup(diag) -> list[int]:
    """Nontrivial invariant factors from an arbitrary diagonal."""
    primes: dict[int, list[int]] = {}
    for d in diag:
        if d in (0, 1):
            continue
        for p, e in _factorize(d).items():
            primes.setdefault(p, []).append(e)
    if not primes:
        return []
    k = max(len(v) for v in primes.values())
    factors = []
    for idx in range(k):
        f = 1
        for p, exps in primes.items():
            exps_sorted = sorted(exps, reverse=True)
            if idx < len(exps_sorted):
                f *= p ** exps_sorted[idx]
        factors.append(f)
    return sorted(factors)  # ascending divisibility chain


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def minors_invariant_factors(mat) -> list[int]:
    """Invariant factors via gcds of k x k minors (tiny matrices only)."""
    a = np.array(mat, dtype=object)
    rows, cols = a.shape
    r = min(rows, cols)
    dets_gcd = [1]
    for k in range(1, r + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, _int_det([[int(a[i][j]) for j in ci] for i in ri]))
        dets_gcd.append(g)
        if g == 0:
            break
    factors = []
    for k in range(1, len(dets_gcd)):
        if dets_gcd[k] == 0:
            break
        factors.append(dets_gcd[k] // dets_gcd[k - 1])
    return [f for f in factors if f > 1]


def _int_det(m) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        sub = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _int_det(sub)
    return total


# -- lattice class enumeration, unpruned numpy box scan --


def box_scan_classes(rank: int, self_int: int, k_int: int, margin: int = 3):
    """All (v0; b_1..b_{rank-1}) with v0^2 - sum b^2 = self_int and
    -3 v0 - sum b = k_int, scanned over the full coefficient box."""
    r = rank - 1
    out = []
    for a in range(-(3 + margin), 4 + margin):
        q_total = a * a - self_int
        s_total = -3 * a - k_int
        bound = abs(a) + margin
        if q_total < 0:
            continue
        vals = np.arange(-bound, bound + 1, dtype=np.int64)
        # split coordinates: loop over the first max(0, r-5), vectorize the rest
        n_loop = max(0, r - 5)
        n_vec = r - n_loop
        grids = np.meshgrid(*([vals] * n_vec), indexing="ij")
        flat = np.stack([g.ravel() for g in grids], axis=1) if n_vec else np.zeros((1, 0), np.int64)
        sq = (flat * flat).sum(axis=1)
        sm = flat.sum(axis=1)
        for head in itertools.product(vals.tolist(), repeat=n_loop):
            hq = sum(x * x for x in head)
            hs = sum(head)
            mask = (sq == q_total - hq) & (sm == s_total - hs)
            for tail in flat[mask]:
                out.append((a,) + tuple(head) + tuple(int(x) for x in tail))
    return sorted(out)


def classical_minus_one_classes(degree: int):
    """The classical list of (-1)-classes of a blow-up of P^2 in 9-d points
    in general position, built family by family."""
    n = 9 - degree
    classes = set()
    idx = range(1, n + 1)

    def vec(a, pairs):
        v = [a] + [0] * n
        for i, c in pairs:
            v[i] += c
        return tuple(v)

    for i in idx:
        classes.add(vec(0, [(i, 1)]))
    for i, j in itertools.combinations(idx, 2):
        classes.add(vec(1, [(i, -1), (j, -1)]))
    for s in itertools.combinations(idx, 5):
        classes.add(vec(2, [(i, -1) for i in s]))
    if n >= 7:
        for s in itertools.combinations(idx, 7):
            for i in s:
                classes.add(vec(3, [(j, -1) for j in s] + [(i, -1)]))
    if n == 8:
        for s in itertools.combinations(idx, 3):
            classes.add(vec(4, [(i, -1) for i in idx] + [(i, -1) for i in s]))
        for s in itertools.combinations(idx, 6):
            classes.add(vec(5, [(i, -1) for i in idx] + [(i, -1) for i in s]))
        for i in idx:
            classes.add(vec(6, [(j, -2) for j in idx] + [(i, -1)]))
    return sorted(classes)
