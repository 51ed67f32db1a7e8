"""Evaluation subgroups on H1 and the category of a map, for finite spaces.

Mapping spaces of finite spaces are finite posets under the pointwise
order, so the component of a map is its fence class and evaluation at a
basepoint is a monotone map into the target.  Before taking H1 the
component is shrunk to a beat-point core, which does not change the image.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .abgrp import Subgroup, subgroup_leq
from .errors import InputError
from .homology import homology, induced_map
from .homotopy import FLAVORS, HomotopySet, _check_budget, default_budget, fence_moves, homotopy_classes
from .order import (
    FinitePoset,
    FiniteProset,
    MonotoneMap,
    beat_point_core,
    bits,
    map_label,
    quotient_by_mutual_leq,
)


def _basepoint(X: FiniteProset, basepoint) -> int:
    if isinstance(basepoint, int):
        if not 0 <= basepoint < len(X):
            raise InputError("basepoint outside the source")
        return basepoint
    return X.index(basepoint)


def mapping_poset(X: FiniteProset, Y: FiniteProset, assignments) -> FinitePoset:
    """Pointwise order on the given monotone assignments (labels are map labels)."""
    maps = list(assignments)
    m = len(maps)
    # above[x][y]: maps g with g(x) >= y
    above = [[0] * len(Y) for _ in range(len(X))]
    for k, g in enumerate(maps):
        for x, gx in enumerate(g):
            for y in bits(Y.down[gx]):
                above[x][y] |= 1 << k
    rows = []
    everything = (1 << m) - 1
    for f in maps:
        row = everything
        for x, fx in enumerate(f):
            row &= above[x][fx]
        rows.append(row)
    labels = [map_label(Y.elements[v] for v in g) for g in maps]
    return FiniteProset(labels, rows) if not _antisymmetric(rows) else FinitePoset(labels, rows)


def _antisymmetric(rows) -> bool:
    down = [0] * len(rows)
    for i, r in enumerate(rows):
        for j in bits(r):
            down[j] |= 1 << i
    return all(rows[i] & down[i] == 1 << i for i in range(len(rows)))


def evaluation_subgroup_ab(f: MonotoneMap, basepoint=0, budget: int | None = None, hs: HomotopySet | None = None) -> Subgroup:
    """Image of ``ev_*: H1(component of f) -> H1(Y)``, ``ev(g) = g(basepoint)``."""
    X, Y = f.source, f.target
    x0 = _basepoint(X, basepoint)
    if hs is None:
        hs = homotopy_classes(X, Y, budget)
    c = hs.class_index(f)
    comp = [hs.maps[k] for k in hs.classes[c]]
    M = mapping_poset(X, Y, comp)
    if not M.is_partial_order:
        # non-antisymmetric targets: evaluate on the poset quotient of the component
        M, proj = quotient_by_mutual_leq(M)
        reps = {}
        for k, v in enumerate(proj.assignment):
            reps.setdefault(v, comp[k])
        comp = [reps[v] for v in range(len(M))]
    core = beat_point_core(M)
    keep = list(bits(core))
    C = M.restrict(core)
    ev = MonotoneMap(C, Y, [comp[k][x0] for k in keep])
    return induced_map(ev, 1).image()


@dataclass
class GottliebReport:
    hs: HomotopySet
    basepoint: int
    subgroups: list[Subgroup]
    pairs: list[tuple[int, int, bool]]  # ([f] <=_R [g], G(g) ⊆ G(f))

    @property
    def violations(self) -> list[tuple[int, int]]:
        return [(f, g) for f, g, ok in self.pairs if not ok]

    @property
    def monotone(self) -> bool:
        """Whether ``[f] ↦ G(f)`` reverses ``<=_R`` on every pair."""
        return not self.violations

    def to_json(self) -> dict:
        hs = self.hs
        return {
            "schema": "stratos/gottlieb@1",
            "basepoint": hs.source.elements[self.basepoint],
            "ambient": homology(hs.target, 1).to_json(),
            "classes": [
                {"representative": hs.labels[c], "subgroup": s.to_json()} for c, s in enumerate(self.subgroups)
            ],
            "pairs_checked": len(self.pairs),
            "reversed_monotone": self.monotone,
            "violations": [[hs.labels[f], hs.labels[g]] for f, g in self.violations],
            "note": "components are taken in the unbased map poset; inclusions along free R-witnesses are reported, not assumed",
        }


def gottlieb_order_check(hs: HomotopySet, basepoint=0) -> GottliebReport:
    x0 = _basepoint(hs.source, basepoint)
    subs = [evaluation_subgroup_ab(hs.representative(c), x0, hs=hs) for c in range(len(hs))]
    pre = hs.preorder("R")
    pairs = []
    for f in range(len(hs)):
        for g in bits(pre.up[f]):
            if f != g:
                pairs.append((f, g, subgroup_leq(subs[g], subs[f])))
    return GottliebReport(hs, x0, subs, pairs)


# -- category of a map ----------------------------------------------------


def _below_or_above_constant(Y: FiniteProset, values) -> bool:
    up = Y.full
    down = Y.full
    for v in values:
        up &= Y.up[v]
        down &= Y.down[v]
    return bool(up or down)


def is_nullhomotopic_on(f: MonotoneMap, U, budget: int | None = None) -> bool:
    """Whether ``f`` restricted to the open set ``U`` is homotopic to a constant."""
    X, Y = f.source, f.target
    mask = U if isinstance(U, int) else X.mask(U)
    if not X.is_up_set(mask):
        raise InputError("subset is not open", witness=X.labels(mask))
    keep = list(bits(mask))
    values = [f.assignment[i] for i in keep]
    if len(set(values)) <= 1 or _below_or_above_constant(Y, values):
        return True
    Xu = X.restrict(mask)
    limit = default_budget() if budget is None else budget
    start = tuple(values)
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for upward in (True, False):
            for h in fence_moves(Xu, Y, a, upward):
                if h in seen:
                    continue
                if len(set(h)) <= 1:
                    return True
                seen.add(h)
                _check_budget(len(seen), limit, "nullhomotopy search")
                queue.append(h)
    return False


def _up_sets(X: FiniteProset, budget: int | None) -> list[int]:
    found = {0}
    for u in X.up:
        found |= {o | u for o in found}
        _check_budget(len(found), budget, "open sets")
    return sorted(found, key=lambda m: (-bin(m).count("1"), m))


def maximal_good_opens(f: MonotoneMap, budget: int | None = None) -> list[int]:
    """Nonempty opens on which ``f`` is nullhomotopic, maximal under inclusion."""
    maximal: list[int] = []
    for o in _up_sets(f.source, budget):
        if o == 0 or any(o & ~m == 0 for m in maximal):
            continue
        if is_nullhomotopic_on(f, o, budget):
            maximal.append(o)
    return maximal


def minimum_cover(universe: int, sets: list[int]) -> list[int]:
    """A smallest subfamily of ``sets`` whose union is ``universe``."""
    if universe == 0:
        return []
    # greedy seed
    best: list[int] = []
    covered = 0
    while covered != universe:
        pick = max(sets, key=lambda s: bin(s & ~covered).count("1"))
        if not pick & ~covered:
            raise InputError("the sets do not cover the universe")
        best.append(pick)
        covered |= pick
    largest = max(bin(s).count("1") for s in sets)

    def search(chosen, covered):
        nonlocal best
        left = universe & ~covered
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        # each further set covers at most `largest` new points
        need = -(-bin(left).count("1") // largest)
        if len(chosen) + need >= len(best):
            return
        x = min(bits(left), key=lambda i: sum(1 for s in sets if s >> i & 1))
        for s in sets:
            if s >> x & 1:
                chosen.append(s)
                search(chosen, covered | s)
                chosen.pop()

    search([], 0)
    return best


@dataclass
class CatReport:
    value: int
    cover: list[int]
    space: FiniteProset = field(repr=False)

    def cover_labels(self) -> list[list[str]]:
        return [self.space.labels(m) for m in self.cover]

    def to_json(self) -> dict:
        return {"schema": "stratos/cat@1", "cat": self.value, "cover": self.cover_labels()}


def cat_of_map(f: MonotoneMap, budget: int | None = None) -> CatReport:
    """Least ``n`` such that ``n + 1`` opens on which ``f`` is nullhomotopic cover the source."""
    X = f.source
    if len(X) == 0:
        return CatReport(0, [0], X)
    good = maximal_good_opens(f, budget)
    cover = minimum_cover(X.full, good)
    cover = sorted(cover, key=lambda m: X.labels(m))
    return CatReport(len(cover) - 1, cover, X)


@dataclass
class CatDescents:
    hs: HomotopySet
    values: list[int]
    covers: list[CatReport]
    descents: dict  # flavor -> {"map": [...], "violations": [...], "square_commutes": bool}

    @property
    def monotone(self) -> bool:
        return all(not d["violations"] for d in self.descents.values())

    def to_json(self) -> dict:
        hs = self.hs
        return {
            "schema": "stratos/cat-descents@1",
            "classes": [
                {"representative": hs.labels[c], "cat": v, "cover": self.covers[c].cover_labels()}
                for c, v in enumerate(self.values)
            ],
            "descents": {
                fl: {
                    "values": d["map"],
                    "violations": [[hs.labels[a], hs.labels[b]] for a, b in d["violations"]],
                    "square_commutes": d["square_commutes"],
                }
                for fl, d in self.descents.items()
            },
        }


def cat_descents(hs: HomotopySet, jobs: int = 1) -> CatDescents:
    """``cat`` per class and its descent to each quotient poset, with checks.

    ``jobs > 1`` computes the per-class values on a thread pool; results are
    collected in class order, so the output does not depend on it.
    """
    reps = [hs.representative(c) for c in range(len(hs))]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda f: cat_of_map(f, hs.budget), reps))
    else:
        reports = [cat_of_map(f, hs.budget) for f in reps]
    values = [r.value for r in reports]
    descents = {}
    for flavor in FLAVORS:
        pre = hs.preorder(flavor)
        violations = [(g, f) for g in range(len(hs)) for f in bits(pre.up[g]) if values[g] > values[f]]
        q = hs.quotient(flavor)
        per_class: dict[str, int] = {}
        square = True
        for c, k in enumerate(q.projection.assignment):
            name = q.poset.elements[k]
            if per_class.setdefault(name, values[c]) != values[c]:
                square = False
        descents[flavor] = {
            "map": {name: per_class[name] for name in q.poset.elements},
            "violations": violations,
            "square_commutes": square,
        }
    return CatDescents(hs, values, reports, descents)


__all__ = [
    "CatDescents",
    "CatReport",
    "GottliebReport",
    "cat_descents",
    "cat_of_map",
    "evaluation_subgroup_ab",
    "minimum_cover",
    "gottlieb_order_check",
    "is_nullhomotopic_on",
    "mapping_poset",
    "maximal_good_opens",
]
