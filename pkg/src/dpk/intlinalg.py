"""Exact integer matrix utilities: products, Smith normal form, kernels.

Matrices are lists of lists of Python ints (arbitrary precision), row
major.  Nothing here ever touches floating point.
"""

from __future__ import annotations


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if len(a[0]) != len(b):
        raise ValueError("matmul shape mismatch")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: list[list[int]], v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: list[list[int]]) -> list[list[int]]:
    return [list(row) for row in zip(*a)]


def mat_sub(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq_identity(a: list[list[int]]) -> bool:
    return all(a[i][j] == (1 if i == j else 0) for i in range(len(a)) for j in range(len(a[0])))


def det(a: list[list[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _min_pivot(a: list[list[int]], t: int, m: int, n: int) -> tuple[int, int] | None:
    """Position of a least-|value| nonzero entry of a[t:, t:], or None."""
    best = None
    best_val = 0
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v != 0 and (best is None or abs(v) < best_val):
                best = (i, j)
                best_val = abs(v)
                if best_val == 1:
                    return best
    return best


def smith_normal_form(
    mat: list[list[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix.

    Returns (U, S, V) with U*mat*V = S, S diagonal with nonnegative
    entries satisfying S[i][i] | S[i+1][i+1], and U, V unimodular.
    """
    u, s, v, _ = _snf_full(mat)
    return u, s, v


def _snf_full(mat):
    """SNF with all transforms: returns (U, S, V, Vinv), U*mat*V = S."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [row[:] for row in mat]
    u = identity(m)
    v = identity(n)
    vinv = identity(n)

    def row_add(i, j, q):  # row_i += q * row_j
        ai, aj = a[i], a[j]
        for k in range(n):
            ai[k] += q * aj[k]
        ui, uj = u[i], u[j]
        for k in range(m):
            ui[k] += q * uj[k]

    def col_add(i, j, q):  # col_i += q * col_j ; vinv gets the inverse row op
        for r in a:
            r[i] += q * r[j]
        for r in v:
            r[i] += q * r[j]
        vi, vj = vinv[i], vinv[j]
        for k in range(n):
            vj[k] -= q * vi[k]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        piv = _min_pivot(a, t, m, n)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        while True:
            # clear column t below and above the pivot
            dirty = False
            for i in range(m):
                if i != t and a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t] != 0:
                        dirty = True
            if dirty:
                piv = _min_pivot(a, t, m, n)
                pi, pj = piv
                if pi != t:
                    row_swap(pi, t)
                if pj != t:
                    col_swap(pj, t)
                continue
            for j in range(n):
                if j != t and a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j] != 0:
                        dirty = True
            if not dirty:
                break
            piv = _min_pivot(a, t, m, n)
            pi, pj = piv
            if pi != t:
                row_swap(pi, t)
            if pj != t:
                col_swap(pj, t)
        # pivot must divide every remaining entry
        p = a[t][t]
        offender = None
        for i in range(t + 1, m):
            row = a[i]
            for j in range(t + 1, n):
                if row[j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        if p < 0:
            row_neg(t)
        t += 1

    s = zeros(m, n)
    for i in range(min(m, n)):
        s[i][i] = a[i][i]
    return u, s, v, vinv


def snf_diagonal(mat: list[list[int]]) -> list[int]:
    """Diagonal of the Smith form only (no transforms): fast path.

    Returns min(m, n) nonnegative integers in divisibility order.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [row[:] for row in mat]
    diag = []
    t = 0
    while t < min(m, n):
        piv = _min_pivot(a, t, m, n)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            a[pi], a[t] = a[t], a[pi]
        if pj != t:
            for r in a:
                r[pj], r[t] = r[t], r[pj]
        while True:
            dirty = False
            att = a[t][t]
            for i in range(t + 1, m):
                ait = a[i][t]
                if ait != 0:
                    q = ait // att
                    ai, at_row = a[i], a[t]
                    for k in range(t, n):
                        ai[k] -= q * at_row[k]
                    if ai[t] != 0:
                        dirty = True
            if dirty:
                pi, pj = _min_pivot(a, t, m, n)
                if pi != t:
                    a[pi], a[t] = a[t], a[pi]
                if pj != t:
                    for r in a:
                        r[pj], r[t] = r[t], r[pj]
                continue
            att = a[t][t]
            at_row = a[t]
            for j in range(t + 1, n):
                atj = at_row[j]
                if atj != 0:
                    q = atj // att
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if at_row[j] != 0:
                        dirty = True
            if not dirty:
                break
            pi, pj = _min_pivot(a, t, m, n)
            if pi != t:
                a[pi], a[t] = a[t], a[pi]
            if pj != t:
                for r in a:
                    r[pj], r[t] = r[t], r[pj]
        p = a[t][t]
        offender = None
        for i in range(t + 1, m):
            row = a[i]
            for j in range(t + 1, n):
                if row[j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            ai, at_row = a[offender], a[t]
            for k in range(t, n):
                at_row[k] += ai[k]
            continue
        diag.append(abs(p))
        t += 1
    diag.extend([0] * (min(m, n) - len(diag)))
    return diag


def kernel_basis(mat: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel {v : mat @ v = 0}, as a list of columns.

    The basis is primitive: it spans a saturated sublattice (columns of a
    unimodular matrix).
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    _, s, v, _ = _snf_full(mat)
    cols = []
    for j in range(n):
        if j >= min(m, n) or s[j][j] == 0:
            cols.append([v[i][j] for i in range(n)])
    return cols


def solve_exact(basis_cols: list[list[int]], target: list[int]) -> list[int]:
    """Integer coordinates of target in the given lattice basis.

    basis_cols is a list of linearly independent columns; raises
    ValueError when target is not an integer combination of them.
    """
    n = len(target)
    s_cols = len(basis_cols)
    b = [[basis_cols[j][i] for j in range(s_cols)] for i in range(n)]
    u, s, v, _ = _snf_full(b)
    # b = U^-1 S V^-1, so solve S y = U t, then x = V y
    ut = mat_vec(u, target)
    y = []
    for i in range(s_cols):
        d = s[i][i]
        if d == 0 or ut[i] % d != 0:
            raise ValueError("target not in the integer span")
        y.append(ut[i] // d)
    for i in range(s_cols, n):
        if ut[i] != 0:
            raise ValueError("target not in the rational span")
    return mat_vec(v, y)
