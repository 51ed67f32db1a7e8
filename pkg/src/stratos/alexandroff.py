"""Finite topological spaces and their equivalence with finite prosets.

A finite topology is determined by the minimal open neighbourhood ``U_x`` of
each point; open sets are the unions of those.  Open sets use the upward
convention: the Alexandroff topology of a proset has the up-closed subsets
as its opens.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InputError, TopologyError
from .order import FiniteProset, bits, mask_of


class FiniteSpace:
    """Points plus a topology, stored as the minimal open set of each point.

    Build one with :func:`to_space` or :meth:`from_opens`; the latter keeps
    the family it was given (after validating it) as :attr:`opens`.
    """

    __slots__ = ("points", "minimal_opens", "_given", "_index", "__dict__")

    def __init__(self, points: Sequence[str], minimal_opens: Sequence[int], _given=None):
        points = tuple(points)
        minimal_opens = tuple(minimal_opens)
        if len(points) != len(minimal_opens):
            raise InputError("one minimal open set per point is required")
        index = {p: i for i, p in enumerate(points)}
        if len(index) != len(points):
            raise InputError("duplicate point labels")
        for i, u in enumerate(minimal_opens):
            if not u >> i & 1:
                raise InputError(f"minimal open set of {points[i]!r} does not contain it")
            for j in bits(u):
                if minimal_opens[j] & ~u:
                    raise InputError("minimal open sets are not nested", witness=[points[i], points[j]])
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "minimal_opens", minimal_opens)
        object.__setattr__(self, "_given", _given)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        if name in ("points", "minimal_opens", "_given", "_index"):
            raise AttributeError("FiniteSpace is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def from_opens(cls, points: Sequence[str], opens: Iterable[Iterable[str]]) -> "FiniteSpace":
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}
        family = []
        for o in opens:
            m = 0
            for x in o:
                if x not in index:
                    raise InputError(f"open set mentions unknown point {x!r}")
                m |= 1 << index[x]
            family.append(m)
        validate_topology(points, family)
        full = (1 << len(points)) - 1
        minimal = []
        for i in range(len(points)):
            u = full
            for o in family:
                if o >> i & 1:
                    u &= o
            minimal.append(u)
        return cls(points, minimal, _given=frozenset(family))

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.minimal_opens == other.minimal_opens

    def __hash__(self):
        return hash((self.points, self.minimal_opens))

    def __repr__(self):
        return f"FiniteSpace({list(self.points)}, {len(self.opens)} opens)"

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown point {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(x) for x in labels)

    def labels(self, mask: int) -> list[str]:
        return [self.points[i] for i in bits(mask)]

    @cached_property
    def opens(self) -> frozenset[int]:
        """Every open set, as a bitmask."""
        if self._given is not None:
            return self._given
        found = {0}
        for u in self.minimal_opens:
            found |= {o | u for o in found}
        return frozenset(found)

    def is_open(self, mask: int) -> bool:
        return all(self.minimal_opens[i] & ~mask == 0 for i in bits(mask))

    def is_closed(self, mask: int) -> bool:
        return self.is_open(self.full & ~mask)

    def interior(self, mask: int) -> int:
        return mask_of(i for i in bits(mask) if self.minimal_opens[i] & ~mask == 0)

    def closure(self, mask: int) -> int:
        """Complement of the union of all opens missing ``mask``."""
        return self.full & ~self.interior(self.full & ~mask)

    def open_hull(self, mask: int) -> int:
        """Smallest open set containing ``mask``."""
        out = 0
        for i in bits(mask):
            out |= self.minimal_opens[i]
        return out

    def subset(self, labels: Iterable[str]) -> int:
        return self.mask(labels)

    def to_json(self) -> dict:
        return {"points": list(self.points), "opens": sorted((self.labels(o) for o in self.opens), key=lambda o: (len(o), o))}


def validate_topology(points: Sequence[str], family: Iterable[int]) -> None:
    """Raise :class:`TopologyError` naming the first failing witness."""
    n = len(points)
    full = (1 << n) - 1
    fam = list(dict.fromkeys(family))
    present = set(fam)

    def names(m):
        return [points[i] for i in bits(m)]

    if 0 not in present:
        raise TopologyError("the empty set is not open", witness={"missing": []})
    if full not in present:
        raise TopologyError("the whole space is not open", witness={"missing": names(full)})
    for a_pos, a in enumerate(fam):
        for b in fam[a_pos + 1:]:
            if a | b not in present:
                raise TopologyError(
                    "family is not closed under union",
                    witness={"pair": [names(a), names(b)], "missing": names(a | b)},
                )
            if a & b not in present:
                raise TopologyError(
                    "family is not closed under intersection",
                    witness={"pair": [names(a), names(b)], "missing": names(a & b)},
                )


def is_alexandroff(space) -> bool:
    """True for every valid finite topology; raises on an invalid family.

    Accepts a :class:`FiniteSpace` or a ``(points, opens)`` pair of labels.
    """
    if isinstance(space, FiniteSpace):
        points, family = space.points, space.opens
    else:
        points, opens = space
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}
        try:
            family = [mask_of(index[x] for x in o) for o in opens]
        except KeyError as exc:
            raise InputError(f"open set mentions unknown point {exc.args[0]!r}") from None
    validate_topology(points, family)
    # arbitrary intersections reduce to pairwise ones on a finite family
    return True


def to_space(p: FiniteProset) -> FiniteSpace:
    """Alexandroff topology: opens are the up-closed sets, ``U_x = {y | x <= y}``."""
    return FiniteSpace(p.elements, p.up)


def specialization_order(s: FiniteSpace) -> FiniteProset:
    """``x <= y`` iff ``x`` lies in the closure of ``{y}``."""
    rows = [0] * len(s)
    for y in range(len(s)):
        for x in bits(s.closure(1 << y)):
            rows[x] |= 1 << y
    return FiniteProset(s.points, rows)


def is_locally_closed(subset, s: FiniteSpace) -> bool:
    """Whether ``subset`` is the intersection of a closed and an open set."""
    m = _as_mask(subset, s)
    return s.closure(m) & s.open_hull(m) == m


def is_continuous(f, s1: FiniteSpace, s2: FiniteSpace) -> bool:
    """Preimage of every basic open of ``s2`` is open in ``s1``.

    ``f`` is a sequence of target indices or a mapping of point labels.
    """
    assignment = point_map(f, s1, s2)
    for y in range(len(s2)):
        pre = mask_of(x for x, fx in enumerate(assignment) if s2.minimal_opens[y] >> fx & 1)
        if not s1.is_open(pre):
            return False
    return True


def point_map(f, s1, s2) -> tuple[int, ...]:
    if isinstance(f, Mapping):
        missing = [x for x in _names(s1) if x not in f]
        if missing:
            raise InputError("assignment is not total", witness=missing)
        return tuple(s2.index(f[x]) for x in _names(s1))
    f = tuple(f)
    if len(f) != len(s1):
        raise InputError("assignment is not total")
    if any(not isinstance(v, int) or not 0 <= v < len(s2) for v in f):
        raise InputError("assignment value outside the target")
    return f


def _as_mask(subset, s: FiniteSpace) -> int:
    if isinstance(subset, int):
        if subset & ~s.full:
            raise InputError("subset is not contained in the space")
        return subset
    labels = list(subset)
    bad = [x for x in labels if x not in s._index]
    if bad:
        raise InputError("subset is not contained in the space", witness=bad)
    return s.mask(labels)


def _names(s):
    return s.points if isinstance(s, FiniteSpace) else s.elements
