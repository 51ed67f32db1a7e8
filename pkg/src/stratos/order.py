"""Finite preordered and partially ordered sets.

Relations are dense boolean matrices stored row-wise as Python int bitsets:
bit ``j`` of ``up[i]`` is set iff ``elements[i] <= elements[j]``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InputError, NotAPartialOrder


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _warshall(rows: list[int]) -> list[int]:
    n = len(rows)
    for k in range(n):
        bk, rk = 1 << k, rows[k]
        for i in range(n):
            if rows[i] & bk:
                rows[i] |= rk
    return rows


class FiniteProset:
    """A finite set with a reflexive, transitive relation.

    Element order is preserved as given; labels must be distinct strings.
    Instances are immutable and hashable, and compare equal when labels,
    their order, and the relation agree (regardless of subclass).
    """

    __slots__ = ("elements", "up", "_index", "__dict__")

    def __init__(self, elements: Sequence[str], up: Sequence[int]):
        elements = tuple(elements)
        up = tuple(int(r) for r in up)
        if len(elements) != len(up):
            raise InputError("relation rows do not match the number of elements")
        for e in elements:
            if not isinstance(e, str):
                raise InputError(f"element labels must be strings, got {e!r}")
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise InputError("duplicate element labels")
        full = (1 << len(elements)) - 1
        for i, row in enumerate(up):
            if row & ~full:
                raise InputError("relation row refers to a nonexistent element")
            if not row >> i & 1:
                raise InputError(f"relation is not reflexive at {elements[i]!r}")
        for i, row in enumerate(up):
            for j in bits(row):
                if up[j] & ~row:
                    k = next(bits(up[j] & ~row))
                    raise InputError(
                        "relation is not transitive",
                        witness=[elements[i], elements[j], elements[k]],
                    )
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "_index", index)
        self._check()

    def _check(self):
        pass

    def __setattr__(self, name, value):
        if name in ("elements", "up", "_index"):
            raise AttributeError("FiniteProset is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def from_matrix(cls, elements: Sequence[str], leq: Sequence[Sequence[bool]]):
        return cls(elements, [mask_of(j for j, v in enumerate(row) if v) for row in leq])

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, FiniteProset):
            return NotImplemented
        return self.elements == other.elements and self.up == other.up

    def __hash__(self):
        return hash((self.elements, self.up))

    def __repr__(self):
        rel = ", ".join(f"{a}<={b}" for a, b in self.strict_pairs())
        return f"{type(self).__name__}({list(self.elements)}; {rel})"

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(x) for x in labels)

    def labels(self, mask: int) -> list[str]:
        return [self.elements[i] for i in bits(mask)]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def matrix(self) -> list[list[bool]]:
        n = len(self)
        return [[bool(self.up[i] >> j & 1) for j in range(n)] for i in range(n)]

    @cached_property
    def down(self) -> tuple[int, ...]:
        rows = [0] * len(self)
        for i, row in enumerate(self.up):
            for j in bits(row):
                rows[j] |= 1 << i
        return tuple(rows)

    def strict_pairs(self) -> list[tuple[str, str]]:
        """All pairs ``(a, b)`` with ``a <= b`` and ``a != b``."""
        return [
            (self.elements[i], self.elements[j])
            for i, row in enumerate(self.up)
            for j in bits(row)
            if i != j
        ]

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def is_up_set(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def is_down_set(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in bits(mask))

    @cached_property
    def mutual_classes(self) -> tuple[int, ...]:
        """Masks of the classes of ``x ~ y`` iff ``x <= y <= x``, by first member."""
        seen, out = 0, []
        for i in range(len(self)):
            if seen >> i & 1:
                continue
            cls = self.up[i] & self.down[i]
            seen |= cls
            out.append(cls)
        return tuple(out)

    @property
    def is_partial_order(self) -> bool:
        return all(self.up[i] & self.down[i] == 1 << i for i in range(len(self)))

    def restrict(self, mask: int) -> "FiniteProset":
        """The induced preorder on the elements in ``mask`` (order kept)."""
        keep = list(bits(mask))
        pos = {old: new for new, old in enumerate(keep)}
        rows = [mask_of(pos[j] for j in bits(self.up[i] & mask)) for i in keep]
        return type(self)([self.elements[i] for i in keep], rows)

    def relabel(self, labels: Sequence[str]) -> "FiniteProset":
        return type(self)(labels, self.up)

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "relations": [list(p) for p in self.strict_pairs()]}


class FinitePoset(FiniteProset):
    """A finite proset whose relation is also antisymmetric."""

    __slots__ = ()

    def _check(self):
        for i in range(len(self)):
            both = self.up[i] & self.down[i] & ~(1 << i)
            if both:
                j = next(bits(both))
                raise NotAPartialOrder(
                    "relation is not antisymmetric",
                    witness=[self.elements[i], self.elements[j]],
                )


def transitive_closure(elements: Sequence[str], generating_pairs: Iterable[Sequence[str]]) -> FiniteProset:
    """Smallest reflexive, transitive relation containing ``generating_pairs``."""
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise InputError("duplicate element labels")
    rows = [1 << i for i in range(len(elements))]
    for pair in generating_pairs:
        if len(pair) != 2:
            raise InputError(f"relation must be a pair, got {pair!r}")
        a, b = pair
        for x in (a, b):
            if x not in index:
                raise InputError(f"unknown element {x!r}", witness=list(pair))
        rows[index[a]] |= 1 << index[b]
    return FiniteProset(elements, _warshall(rows))


def poset(elements: Sequence[str], generating_pairs: Iterable[Sequence[str]] = ()) -> FinitePoset:
    p = transitive_closure(elements, generating_pairs)
    return FinitePoset(p.elements, p.up)


def is_partial_order(p: FiniteProset) -> bool:
    return p.is_partial_order


def as_poset(p: FiniteProset) -> FinitePoset:
    if isinstance(p, FinitePoset):
        return p
    return FinitePoset(p.elements, p.up)


def opposite(p: FiniteProset) -> FiniteProset:
    return type(p)(p.elements, p.down)


def hasse_edges(p: FiniteProset) -> list[tuple[str, str]]:
    """Covering pairs ``(x, y)``: ``x < y`` with nothing strictly between.

    Sorted lexicographically on labels.
    """
    if not p.is_partial_order:
        as_poset(p)  # raises with a witness
    edges = []
    for i in range(len(p)):
        above = p.up[i] & ~(1 << i)
        for j in bits(above):
            between = above & p.down[j] & ~(1 << j)
            if not between:
                edges.append((p.elements[i], p.elements[j]))
    return sorted(edges)


def is_monotone(source: FiniteProset, target: FiniteProset, assignment: Sequence[int]) -> bool:
    if len(assignment) != len(source):
        raise InputError("assignment is not total on the source")
    for i, row in enumerate(source.up):
        fi = assignment[i]
        for j in bits(row):
            if not target.up[fi] >> assignment[j] & 1:
                return False
    return True


class MonotoneMap:
    """An order-preserving map between finite prosets, given on indices."""

    __slots__ = ("source", "target", "assignment")

    def __init__(self, source: FiniteProset, target: FiniteProset, assignment: Sequence[int], check: bool = True):
        assignment = tuple(assignment)
        if len(assignment) != len(source):
            raise InputError("assignment is not total on the source")
        if any(not 0 <= a < len(target) for a in assignment):
            raise InputError("assignment value outside the target")
        if check and not is_monotone(source, target, assignment):
            raise InputError("map is not monotone", witness=_monotone_witness(source, target, assignment))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "assignment", assignment)

    def __setattr__(self, name, value):
        raise AttributeError("MonotoneMap is immutable")

    @classmethod
    def from_labels(cls, source: FiniteProset, target: FiniteProset, mapping: Mapping[str, str]):
        missing = [x for x in source.elements if x not in mapping]
        if missing:
            raise InputError("assignment is not total on the source", witness=missing)
        extra = [x for x in mapping if x not in source._index]
        if extra:
            raise InputError("assignment mentions unknown source points", witness=extra)
        return cls(source, target, [target.index(mapping[x]) for x in source.elements])

    @classmethod
    def identity(cls, p: FiniteProset):
        return cls(p, p, range(len(p)), check=False)

    @classmethod
    def constant(cls, source: FiniteProset, target: FiniteProset, value: int):
        return cls(source, target, [value] * len(source), check=False)

    def __call__(self, i: int) -> int:
        return self.assignment[i]

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (self.source, self.target, self.assignment) == (other.source, other.target, other.assignment)

    def __hash__(self):
        return hash((self.source, self.target, self.assignment))

    def __repr__(self):
        return f"MonotoneMap({self.label})"

    def then(self, other: "MonotoneMap") -> "MonotoneMap":
        """``other ∘ self``."""
        if self.target != other.source:
            raise InputError("maps are not composable")
        return MonotoneMap(self.source, other.target, [other.assignment[a] for a in self.assignment], check=False)

    def __matmul__(self, other: "MonotoneMap") -> "MonotoneMap":
        """``self @ other`` is ``self ∘ other``."""
        return other.then(self)

    @property
    def key(self) -> tuple[str, ...]:
        """Target labels in source order; the lexicographic sort key."""
        return tuple(self.target.elements[a] for a in self.assignment)

    @property
    def label(self) -> str:
        return map_label(self.key)

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.source.elements, self.key))

    @property
    def is_constant(self) -> bool:
        return len(set(self.assignment)) <= 1


def map_label(key: Sequence[str]) -> str:
    return "[" + ",".join(key) + "]"


def _monotone_witness(source, target, assignment):
    for i, row in enumerate(source.up):
        for j in bits(row):
            if not target.up[assignment[i]] >> assignment[j] & 1:
                return [source.elements[i], source.elements[j]]
    return None


def quotient_by_mutual_leq(p: FiniteProset) -> tuple[FinitePoset, MonotoneMap]:
    """Collapse ``x ~ y`` (``x <= y`` and ``y <= x``) to a poset.

    Each class is named by its lexicographically least label; classes appear
    in lexicographic order of those names.
    """
    classes = sorted(p.mutual_classes, key=lambda m: min(p.labels(m)))
    names = [min(p.labels(m)) for m in classes]
    where = [0] * len(p)
    for c, m in enumerate(classes):
        for i in bits(m):
            where[i] = c
    rows = []
    for m in classes:
        i = next(bits(m))
        rows.append(mask_of(where[j] for j in bits(p.up[i])))
    q = FinitePoset(names, rows)
    return q, MonotoneMap(p, q, where, check=False)


def beat_point_core(p: FinitePoset) -> int:
    """Mask of a core of ``p``: sweep the points, dropping beat points, until none is left.

    ``x`` is a down beat point when the elements strictly below it have a
    maximum, an up beat point when those strictly above have a minimum.
    The inclusion of the core is a homotopy equivalence of finite spaces.
    """
    keep = p.full
    changed = True
    while changed:
        changed = False
        for x in bits(keep):
            below = p.down[x] & keep & ~(1 << x)
            above = p.up[x] & keep & ~(1 << x)
            if _has_max(p, below) or _has_min(p, above):
                keep &= ~(1 << x)
                changed = True
    return keep


def _has_max(p: FiniteProset, mask: int) -> bool:
    return any(p.down[i] & mask == mask for i in bits(mask))


def _has_min(p: FiniteProset, mask: int) -> bool:
    return any(p.up[i] & mask == mask for i in bits(mask))
