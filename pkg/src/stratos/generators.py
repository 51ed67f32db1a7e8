"""Seeded random instances for property tests and fuzzing."""

from __future__ import annotations

import random
from itertools import combinations

from .alexandroff import FiniteSpace, to_space
from .order import FinitePoset, FiniteProset, _warshall, bits


def _labels(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


def random_proset(rng: random.Random, n: int, density: float = 0.3) -> FiniteProset:
    """Transitive closure of a random relation on ``n`` points."""
    rows = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                rows[i] |= 1 << j
    return FiniteProset(_labels(n), _warshall(rows))


def random_poset(rng: random.Random, n: int, density: float = 0.4) -> FinitePoset:
    """Random relation respecting a random linear extension, then closed."""
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [1 << i for i in range(n)]
    for a, b in combinations(range(n), 2):
        if rng.random() < density:
            rows[perm[a]] |= 1 << perm[b]
    return FinitePoset(_labels(n), _warshall(rows))


def random_space(rng: random.Random, n: int, density: float = 0.3) -> FiniteSpace:
    return to_space(random_proset(rng, n, density))


def random_open_family(rng: random.Random, n: int, extra: int = 2) -> tuple[list[str], list[list[str]]]:
    """A topology as a list of opens: a few random sets closed under ∪ and ∩."""
    full = (1 << n) - 1
    family = {0, full}
    for _ in range(extra):
        family.add(rng.randrange(1 << n))
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(family), 2):
            for c in (a | b, a & b):
                if c not in family:
                    family.add(c)
                    changed = True
    labels = _labels(n)
    return labels, [[labels[i] for i in bits(m)] for m in sorted(family)]


def broken_open_family(rng: random.Random, n: int) -> tuple[list[str], list[list[str]], str]:
    """A family on ``n >= 3`` points that fails one topology axiom, and which."""
    if n < 3:
        raise ValueError("need at least three points")
    labels, opens = random_open_family(rng, n, extra=3)
    masks = [sum(1 << labels.index(x) for x in o) for o in opens]
    full = (1 << n) - 1
    kind = rng.choice(["empty", "whole", "union", "intersection"])
    if kind == "empty":
        masks.remove(0)
    elif kind == "whole":
        masks.remove(full)
    elif kind == "union":
        masks = [0, full, 1, 2]  # {a} ∪ {b} missing
    else:
        masks = [0, full, 3, 6, 7]  # {a,b} ∩ {b,c} missing
    return labels, [[labels[i] for i in bits(m)] for m in masks], kind


def all_set_partitions(n: int):
    """Every partition of ``range(n)`` as a list of masks (restricted growth strings)."""
    def grow(i, blocks):
        if i == n:
            yield list(blocks)
            return
        for k in range(len(blocks)):
            blocks[k] |= 1 << i
            yield from grow(i + 1, blocks)
            blocks[k] &= ~(1 << i)
        blocks.append(1 << i)
        yield from grow(i + 1, blocks)
        blocks.pop()

    if n == 0:
        yield []
        return
    yield from grow(0, [])


def random_int_matrix(rng: random.Random, rows: int, cols: int, lo: int = -9, hi: int = 9) -> list[list[int]]:
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]
