"""Exact integer matrix reductions on lists of lists of Python ints."""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def shape(a: Sequence[Sequence[int]], cols: int | None = None) -> tuple[int, int]:
    r = len(a)
    if r == 0:
        return 0, cols or 0
    return r, len(a[0])


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """``a @ b``; ``inner`` fixes the shared dimension when ``a`` has no rows."""
    n = len(a)
    k = len(b) if inner is None else inner
    m = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else []
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        for j in range(m):
            col = bt[j]
            out[i][j] = sum(ai[t] * col[t] for t in range(k) if ai[t])
    return out


def matvec(a: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def transpose(a: Matrix, cols: int = 0) -> Matrix:
    if not a:
        return [[] for _ in range(cols)]
    return [list(c) for c in zip(*a)]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a*x + b*y = g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(a: Sequence[Sequence[int]], cols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """``(U, S, V)`` with ``U·A·V = S``, ``U``, ``V`` unimodular.

    ``S`` is diagonal with nonnegative entries ``d1 | d2 | ...``.  Pass
    ``cols`` when ``a`` has no rows.
    """
    m = len(a)
    n = len(a[0]) if m else (cols or 0)
    s = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def row_combine(i, j, x, y, p, q):
        # (row_i, row_j) <- (x row_i + y row_j, p row_i + q row_j), det = xq - yp = 1
        for mat in (s, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [x * e + y * f for e, f in zip(ri, rj)]
            mat[j] = [p * e + q * f for e, f in zip(ri, rj)]

    def col_combine(i, j, x, y, p, q):
        for mat in (s, v):
            for row in mat:
                e, f = row[i], row[j]
                row[i] = x * e + y * f
                row[j] = p * e + q * f

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            row = s[i]
            for j in range(t, n):
                e = row[j]
                if e and (best is None or abs(e) < best[0]):
                    best = (abs(e), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            s[t], s[pi] = s[pi], s[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for mat in (s, v):
                for row in mat:
                    row[t], row[pj] = row[pj], row[t]
        while True:
            for i in range(t + 1, m):
                b = s[i][t]
                if b:
                    a_ = s[t][t]
                    if b % a_ == 0:
                        q = b // a_
                        s[i] = [f - q * e for e, f in zip(s[t], s[i])]
                        u[i] = [f - q * e for e, f in zip(u[t], u[i])]
                    else:
                        g, x, y = xgcd(a_, b)
                        row_combine(t, i, x, y, -b // g, a_ // g)
            for j in range(t + 1, n):
                b = s[t][j]
                if b:
                    a_ = s[t][t]
                    if b % a_ == 0:
                        q = b // a_
                        for mat in (s, v):
                            for row in mat:
                                row[j] -= q * row[t]
                    else:
                        g, x, y = xgcd(a_, b)
                        col_combine(t, j, x, y, -b // g, a_ // g)
            if any(s[i][t] for i in range(t + 1, m)):
                continue
            d = s[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            s[t] = [e + f for e, f in zip(s[t], s[bad])]
            u[t] = [e + f for e, f in zip(u[t], u[bad])]
        if s[t][t] < 0:
            s[t] = [-e for e in s[t]]
            u[t] = [-e for e in u[t]]
        t += 1
    return u, s, v


def invariant_factors(a: Sequence[Sequence[int]], cols: int | None = None) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    _, s, _ = smith_normal_form(a, cols)
    out = []
    for i in range(min(len(s), len(s[0]) if s else 0)):
        if s[i][i]:
            out.append(s[i][i])
    return out


def is_smith_form(s: Matrix) -> bool:
    m = len(s)
    n = len(s[0]) if m else 0
    diag = []
    for i in range(m):
        for j in range(n):
            if i != j and s[i][j]:
                return False
    for i in range(min(m, n)):
        diag.append(s[i][i])
    if any(d < 0 for d in diag):
        return False
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return True


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_unimodular(a: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix by integer Gauss-Jordan."""
    n = len(a)
    m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        # gcd-reduce column c below the diagonal into row c
        for i in range(c + 1, n):
            while m[i][c]:
                if m[c][c] == 0 or abs(m[i][c]) < abs(m[c][c]):
                    m[c], m[i] = m[i], m[c]
                    continue
                q = m[i][c] // m[c][c]
                m[i] = [x - q * y for x, y in zip(m[i], m[c])]
        piv = m[c][c]
        if piv not in (1, -1):
            raise ValueError("matrix is not unimodular")
        if piv == -1:
            m[c] = [-x for x in m[c]]
    for c in range(n - 1, -1, -1):
        for i in range(c):
            q = m[i][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def column_hnf(gens: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Canonical basis of the lattice spanned by the column vectors ``gens``.

    Returns columns in echelon form: pivot rows strictly increase, each
    pivot is positive, entries of earlier columns in a pivot row lie in
    ``[0, pivot)``.  Equal lattices give equal output.
    """
    cols = [list(map(int, g)) for g in gens if any(g)]
    for g in cols:
        if len(g) != dim:
            raise ValueError("generator has the wrong length")
    basis: list[list[int]] = []
    pivots: list[int] = []
    for r in range(dim):
        active = [c for c in cols if c[r]]
        rest = [c for c in cols if not c[r]]
        if not active:
            cols = rest
            continue
        piv = active[0]
        for c in active[1:]:
            a, b = piv[r], c[r]
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            new_piv = [x * e + y * f for e, f in zip(piv, c)]
            other = [p * e + q * f for e, f in zip(piv, c)]
            piv = new_piv
            if any(other):
                rest.append(other)
        if piv[r] < 0:
            piv = [-e for e in piv]
        h = piv[r]
        for b in basis:
            q = b[r] // h
            if q:
                for k in range(dim):
                    b[k] -= q * piv[k]
        basis.append(piv)
        pivots.append(r)
        cols = [c for c in rest if any(c)]
    return [tuple(b) for b in basis]


def hnf_contains(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Whether ``v`` lies in the lattice with canonical basis ``basis``."""
    w = list(v)
    for b in basis:
        r = next(i for i, e in enumerate(b) if e)
        if w[r] % b[r]:
            return False
        q = w[r] // b[r]
        if q:
            w = [x - q * y for x, y in zip(w, b)]
    return not any(w)


# -- prime fields --------------------------------------------------------


def rref_mod(a: Sequence[Sequence[int]], p: int, cols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over ``F_p`` and the pivot columns."""
    m = [[x % p for x in row] for row in a]
    n = len(m[0]) if m else (cols or 0)
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_mod(a: Sequence[Sequence[int]], p: int, cols: int) -> list[list[int]]:
    """Basis (as vectors) of the null space of ``a`` over ``F_p``."""
    red, pivots = rref_mod(a, p, cols)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis
