"""Brute-force reference implementations, written independently of the package."""

from __future__ import annotations

from itertools import combinations, product

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors


def leq(p, i, j):
    return bool(p.up[i] >> j & 1)


def all_maps(X, Y):
    return list(product(range(len(Y)), repeat=len(X)))


def monotone_maps(X, Y):
    n = len(X)
    return [
        f for f in all_maps(X, Y)
        if all(leq(Y, f[i], f[j]) for i in range(n) for j in range(n) if leq(X, i, j))
    ]


def pointwise_comparable(Y, f, g):
    return all(leq(Y, a, b) for a, b in zip(f, g)) or all(leq(Y, b, a) for a, b in zip(f, g))


def fence_components(X, Y):
    """Components of the comparability graph on monotone maps (any pair)."""
    maps = monotone_maps(X, Y)
    comp = {}
    for start in maps:
        if start in comp:
            continue
        comp[start] = start
        stack = [start]
        while stack:
            f = stack.pop()
            for g in maps:
                if g not in comp and pointwise_comparable(Y, f, g):
                    comp[g] = start
                    stack.append(g)
    return comp


def compose(g, f):
    """``g ∘ f`` on index tuples."""
    return tuple(g[v] for v in f)


def preorder_brute(X, Y, flavor):
    """Set of (f_root, g_root) with [f] <= [g], quantifying over every map."""
    comp = fence_components(X, Y)
    self_x = monotone_maps(X, X)
    self_y = monotone_maps(Y, Y)
    roots = sorted(set(comp.values()))
    out = set()
    for g in roots:
        reached = set()
        if flavor == "R":
            for s in self_x:
                reached.add(comp[compose(g, s)])
        elif flavor == "L":
            for t in self_y:
                reached.add(comp[compose(t, g)])
        else:
            for s in self_x:
                gs = compose(g, s)
                for t in self_y:
                    reached.add(comp[compose(t, gs)])
        for f in reached:
            out.add((f, g))
    return roots, comp, out


def subsets(n):
    return range(1 << n)


def opens_brute(p):
    """Up-closed subsets by direct check."""
    n = len(p)
    return [
        m for m in subsets(n)
        if all(not (m >> i & 1) or all(m >> j & 1 for j in range(n) if leq(p, i, j)) for i in range(n))
    ]


def closure_brute(opens, n, m):
    full = (1 << n) - 1
    out = full
    for o in opens:
        c = full & ~o
        if m & ~c == 0:
            out &= c
    return out


def locally_closed_brute(opens, n, m):
    full = (1 << n) - 1
    closed = [full & ~o for o in opens]
    return any(c & o == m for c in closed for o in opens)


def smith_invariants(rows):
    if not rows or not rows[0]:
        return []
    out = sympy_invariant_factors(Matrix(rows))
    return [abs(int(d)) for d in out if d != 0]


def chains(p):
    n = len(p)
    found = []
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            if all(leq(p, a, b) or leq(p, b, a) for a, b in combinations(combo, 2)):
                found.append(combo)
    return found


def betti_numbers(p, top=3):
    """Ranks of rational homology of the order complex, by linear algebra over Q."""
    simp = [[] for _ in range(top + 2)]
    for c in chains(p):
        if len(c) - 1 <= top + 1:
            simp[len(c) - 1].append(tuple(sorted(c, key=lambda v: bin(p.down[v]).count("1"))))
    index = [{s: i for i, s in enumerate(level)} for level in simp]

    def rank(k):
        if k == 0 or not simp[k] or not simp[k - 1]:
            return 0
        m = [[0] * len(simp[k]) for _ in simp[k - 1]]
        for j, s in enumerate(simp[k]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                m[index[k - 1][face]][j] = (-1) ** i
        return Matrix(m).rank()

    return [len(simp[k]) - rank(k) - rank(k + 1) for k in range(top + 1)]
