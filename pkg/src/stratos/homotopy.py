"""Homotopy sets ``[X, Y]`` of finite spaces and their three preorders.

Finite spaces are given as prosets (continuous = monotone).  Two maps are
homotopic iff they are joined by a fence ``f = f0, f1, ..., fk = g`` with
consecutive maps pointwise comparable.  Whenever ``f <= g`` pointwise the
fence can be refined so that consecutive maps differ on a single class of
mutually comparable source points, which is what the enumeration uses.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Sequence

from .alexandroff import to_space
from .errors import InputError, SizeError, WellDefinednessError
from .order import (
    FinitePoset,
    FiniteProset,
    MonotoneMap,
    bits,
    map_label,
    quotient_by_mutual_leq,
)
from .stratify import StratifiedSpace, StratMorphism, make_stratified, morphism_failures

DEFAULT_BUDGET = 10**7
FLAVORS = ("R", "L", "LR")


def default_budget() -> int:
    raw = os.environ.get("STRATOS_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"STRATOS_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InputError("STRATOS_BUDGET must be positive")
    return value


def _check_budget(count: int, budget: int | None, what: str):
    budget = default_budget() if budget is None else budget
    if count > budget:
        raise SizeError(f"{what}: {count} candidates exceed the budget of {budget}", witness={"candidates": count, "budget": budget})


def _label_order(Y: FiniteProset) -> list[int]:
    return sorted(range(len(Y)), key=lambda j: Y.elements[j])


def monotone_assignments(X: FiniteProset, Y: FiniteProset, budget: int | None = None) -> list[tuple[int, ...]]:
    """Every order-preserving assignment, sorted by target labels in source order.

    The budget bounds the number of partial assignments the search visits
    (never more than ``|Y|^|X|``); exceeding it raises :class:`SizeError`.
    """
    budget = default_budget() if budget is None else budget
    n = len(X)
    if n == 0:
        return [()]
    order = _label_order(Y)
    below = [X.down[i] & ((1 << i) - 1) for i in range(n)]
    above = [X.up[i] & ((1 << i) - 1) for i in range(n)]
    out: list[tuple[int, ...]] = []
    cur = [0] * n
    visited = 0

    def extend(i):
        nonlocal visited
        if i == n:
            out.append(tuple(cur))
            return
        allowed = Y.full
        for j in bits(below[i]):
            allowed &= Y.up[cur[j]]
        for j in bits(above[i]):
            allowed &= Y.down[cur[j]]
        for y in order:
            if allowed >> y & 1:
                visited += 1
                if visited > budget:
                    _check_budget(visited, budget, "monotone map search")
                cur[i] = y
                extend(i + 1)

    extend(0)
    return out


def all_monotone_maps(X: FiniteProset, Y: FiniteProset, budget: int | None = None) -> list[MonotoneMap]:
    return [MonotoneMap(X, Y, a, check=False) for a in monotone_assignments(X, Y, budget)]


def fence_moves(X: FiniteProset, Y: FiniteProset, a: Sequence[int], upward: bool = True):
    """Monotone maps ``h >= a`` (or ``<=``) that differ from ``a`` on one
    class of mutually comparable source points."""
    cone = Y.up if upward else Y.down
    for cls in X.mutual_classes:
        members = list(bits(cls))
        options = []
        for c in members:
            allowed = cone[a[c]]
            for x in bits(X.down[c] & ~cls):
                allowed &= Y.up[a[x]]
            for x in bits(X.up[c] & ~cls):
                allowed &= Y.down[a[x]]
            options.append(list(bits(allowed)))
        if len(members) == 1:
            c = members[0]
            for y in options[0]:
                if y != a[c]:
                    h = list(a)
                    h[c] = y
                    yield tuple(h)
            continue
        for values in product(*options):
            v0 = values[0]
            # values on a class of mutually comparable points must be mutually comparable
            if any(Y.up[v0] & Y.down[v0] & (1 << v) == 0 for v in values):
                continue
            if all(a[c] == v for c, v in zip(members, values)):
                continue
            h = list(a)
            for c, v in zip(members, values):
                h[c] = v
            yield tuple(h)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


class HomotopySet:
    """``[X, Y]``: homotopy classes of monotone maps with the three preorders.

    ``maps`` holds every monotone assignment in lexicographic order; classes
    are listed by their least member, which is the class representative.
    """

    def __init__(self, source: FiniteProset, target: FiniteProset, budget: int | None = None):
        self.source = source
        self.target = target
        self.budget = default_budget() if budget is None else budget
        self.maps = monotone_assignments(source, target, self.budget)
        self.map_index = {a: k for k, a in enumerate(self.maps)}
        roots: dict[int, int] = {}
        self.classes: list[list[int]] = []
        self.class_of = [0] * len(self.maps)
        key = self._class_keys()
        for k in range(len(self.maps)):
            r = key(k)
            if r not in roots:
                roots[r] = len(self.classes)
                self.classes.append([])
            c = roots[r]
            self.classes[c].append(k)
            self.class_of[k] = c

    def _class_keys(self):
        X, Y = self.source, self.target
        if X.is_partial_order and Y.is_partial_order:
            uf = _UnionFind(len(self.maps))
            for k, a in enumerate(self.maps):
                for h in fence_moves(X, Y, a, upward=True):
                    uf.union(k, self.map_index[h])
            return uf.find
        # maps agreeing up to mutual equivalence are comparable both ways, and
        # the pointwise order descends, so classes come from the poset quotients
        X0, px = quotient_by_mutual_leq(X)
        Y0, py = quotient_by_mutual_leq(Y)
        small = homotopy_classes(X0, Y0, self.budget)
        reps = [0] * len(X0)
        for x in reversed(range(len(X))):
            reps[px.assignment[x]] = x
        py = py.assignment
        return lambda k: small.class_of[small.map_index[tuple(py[self.maps[k][x]] for x in reps)]]

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return f"HomotopySet({len(self.source)}->{len(self.target)} points: {len(self.maps)} maps, {len(self.classes)} classes)"

    def representative(self, c: int) -> MonotoneMap:
        return MonotoneMap(self.source, self.target, self.maps[self.classes[c][0]], check=False)

    @cached_property
    def rep_assignments(self) -> list[tuple[int, ...]]:
        return [self.maps[members[0]] for members in self.classes]

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(map_label(self.target.elements[v] for v in a) for a in self.rep_assignments)

    def class_index(self, f) -> int:
        a = f.assignment if isinstance(f, MonotoneMap) else tuple(f)
        try:
            return self.class_of[self.map_index[a]]
        except KeyError:
            raise InputError("not a monotone map between these spaces") from None

    def members(self, c: int) -> list[MonotoneMap]:
        return [MonotoneMap(self.source, self.target, self.maps[k], check=False) for k in self.classes[c]]

    def homotopic(self, f, g) -> bool:
        return self.class_index(f) == self.class_index(g)

    @cached_property
    def constant_classes(self) -> frozenset[int]:
        return frozenset(self.class_index(a) for a in self.maps if len(set(a)) <= 1)

    # -- preorders -------------------------------------------------------

    def _self_maps(self, side: str) -> "HomotopySet":
        space = self.source if side == "X" else self.target
        if self.source == space and self.target == space:
            return self
        return homotopy_classes(space, space, self.budget)

    def _composite_rows(self, side: str) -> list[int]:
        """Row ``g``: mask of classes ``[g∘s]`` (side X) or ``[t∘g]`` (side Y)."""
        others = self._self_maps(side)
        _check_budget(len(self) * len(others), self.budget, "class compositions")
        rows = []
        for g in self.rep_assignments:
            hit = 0
            for s in others.rep_assignments:
                comp = tuple(g[x] for x in s) if side == "X" else tuple(s[y] for y in g)
                hit |= 1 << self.class_of[self.map_index[comp]]
            rows.append(hit)
        return rows

    @cached_property
    def _preorders(self) -> dict:
        return {}

    def preorder(self, flavor: str) -> FiniteProset:
        """``[f] <= [g]`` iff ``f ≃ g∘s`` (R), ``f ≃ t∘g`` (L), ``f ≃ t∘g∘s`` (LR)."""
        flavor = _flavor(flavor)
        if flavor in self._preorders:
            return self._preorders[flavor]
        n = len(self)
        if flavor == "LR":
            r, l = self.preorder("R"), self.preorder("L")
            up = []
            for f in range(n):
                row = 0
                for h in bits(l.up[f]):
                    row |= r.up[h]
                up.append(row)
        else:
            below = self._composite_rows("X" if flavor == "R" else "Y")
            up = [0] * n
            for g, mask in enumerate(below):
                for f in bits(mask):
                    up[f] |= 1 << g
        result = FiniteProset(self.labels, up)
        self._preorders[flavor] = result
        return result

    def quotient(self, flavor: str) -> "QuotientHomotopyPoset":
        flavor = _flavor(flavor)
        key = "q" + flavor
        if key not in self._preorders:
            p = self.preorder(flavor)
            q, proj = quotient_by_mutual_leq(p)
            self._preorders[key] = QuotientHomotopyPoset(self, flavor, q, proj)
        return self._preorders[key]


def _flavor(flavor: str) -> str:
    f = str(flavor).upper()
    if f not in FLAVORS:
        raise InputError(f"flavor must be one of R, L, LR; got {flavor!r}")
    return f


@lru_cache(maxsize=512)
def _cached(source, target, budget):
    return HomotopySet(source, target, budget)


def homotopy_classes(X: FiniteProset, Y: FiniteProset, budget: int | None = None) -> HomotopySet:
    return _cached(X, Y, default_budget() if budget is None else budget)


def preorder(hs: HomotopySet, flavor: str) -> FiniteProset:
    return hs.preorder(flavor)


def quotient(hs: HomotopySet, flavor: str) -> "QuotientHomotopyPoset":
    return hs.quotient(flavor)


@dataclass(frozen=True, eq=False)
class QuotientHomotopyPoset:
    """``[X, Y]_R``, ``[X, Y]_L`` or ``[X, Y]_LR`` with its projection."""

    parent: HomotopySet
    flavor: str
    poset: FinitePoset
    projection: MonotoneMap

    @property
    def proset(self) -> FiniteProset:
        return self.projection.source

    def members(self, k: int) -> list[int]:
        return [c for c, v in enumerate(self.projection.assignment) if v == k]

    def stratified(self) -> StratifiedSpace:
        return make_stratified(to_space(self.proset), self.poset, self.projection.assignment)


# -- functoriality -------------------------------------------------------


def _descend(q_src: QuotientHomotopyPoset, q_tgt: QuotientHomotopyPoset, class_map: Sequence[int]) -> tuple[int, ...]:
    out = []
    for k in range(len(q_src.poset)):
        images = {q_tgt.projection.assignment[class_map[c]] for c in q_src.members(k)}
        if len(images) != 1:
            raise WellDefinednessError(
                "class map does not descend to the quotient posets",
                witness={"class": q_src.poset.elements[k], "images": sorted(q_tgt.poset.elements[i] for i in images)},
            )
        out.append(images.pop())
    return tuple(out)


def _validated(src_q, tgt_q, class_map):
    m = StratMorphism(src_q.stratified(), tgt_q.stratified(), tuple(class_map), _descend(src_q, tgt_q, class_map))
    failures = morphism_failures(m)
    if failures:
        raise WellDefinednessError("induced square is not a morphism of stratified spaces", witness=failures)
    return m


def postcompose_classes(hs_SX: HomotopySet, g: MonotoneMap, hs_SY: HomotopySet) -> tuple[int, ...]:
    """``[f] ↦ [g∘f]``."""
    return tuple(hs_SY.class_index(tuple(g.assignment[v] for v in f)) for f in hs_SX.rep_assignments)


def precompose_classes(hs_YT: HomotopySet, g: MonotoneMap, hs_XT: HomotopySet) -> tuple[int, ...]:
    """``[f] ↦ [f∘g]``."""
    return tuple(hs_XT.class_index(tuple(f[v] for v in g.assignment)) for f in hs_YT.rep_assignments)


def pushforward(hs_SX: HomotopySet, g: MonotoneMap, hs_SY: HomotopySet | None = None) -> StratMorphism:
    """The square ``g_*`` from ``[S,X] -> [S,X]_R`` to ``[S,Y] -> [S,Y]_R``."""
    if g.source != hs_SX.target:
        raise InputError("map does not start at the target of the homotopy set")
    if hs_SY is None:
        hs_SY = homotopy_classes(hs_SX.source, g.target, hs_SX.budget)
    elif hs_SY.source != hs_SX.source or hs_SY.target != g.target:
        raise InputError("target homotopy set does not match")
    _check_budget(len(hs_SX), hs_SX.budget, "compositions")
    cmap = postcompose_classes(hs_SX, g, hs_SY)
    return _validated(hs_SX.quotient("R"), hs_SY.quotient("R"), cmap)


def pullback(hs_YT: HomotopySet, g: MonotoneMap, hs_XT: HomotopySet | None = None) -> StratMorphism:
    """The square ``g^*`` from ``[Y,T] -> [Y,T]_L`` to ``[X,T] -> [X,T]_L``."""
    if g.target != hs_YT.source:
        raise InputError("map does not end at the source of the homotopy set")
    if hs_XT is None:
        hs_XT = homotopy_classes(g.source, hs_YT.target, hs_YT.budget)
    elif hs_XT.source != g.source or hs_XT.target != hs_YT.target:
        raise InputError("target homotopy set does not match")
    _check_budget(len(hs_YT), hs_YT.budget, "compositions")
    cmap = precompose_classes(hs_YT, g, hs_XT)
    return _validated(hs_YT.quotient("L"), hs_XT.quotient("L"), cmap)


def compose_morphisms(first: StratMorphism, second: StratMorphism) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Space and poset maps of ``second ∘ first``."""
    return (
        tuple(second.space_map[v] for v in first.space_map),
        tuple(second.poset_map[v] for v in first.poset_map),
    )


def report(hs: HomotopySet, flavor: str) -> dict:
    q = hs.quotient(flavor)
    from .order import hasse_edges

    return {
        "schema": "stratos/homset@1",
        "source": list(hs.source.elements),
        "target": list(hs.target.elements),
        "maps": len(hs.maps),
        "classes": [
            {"representative": hs.labels[c], "size": len(hs.classes[c]), "stratum": q.poset.elements[q.projection.assignment[c]]}
            for c in range(len(hs))
        ],
        "flavor": q.flavor,
        "preorder": [list(p) for p in q.proset.strict_pairs()],
        "quotient": {
            "elements": list(q.poset.elements),
            "hasse": [list(e) for e in hasse_edges(q.poset)],
        },
    }


__all__ = [
    "DEFAULT_BUDGET",
    "HomotopySet",
    "QuotientHomotopyPoset",
    "all_monotone_maps",
    "homotopy_classes",
    "monotone_assignments",
    "fence_moves",
    "preorder",
    "quotient",
    "pushforward",
    "pullback",
]
