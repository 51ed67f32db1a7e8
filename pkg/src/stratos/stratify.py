"""Decompositions, stratification conditions and poset-stratified spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .alexandroff import FiniteSpace, is_continuous, is_locally_closed, point_map, specialization_order, to_space
from .errors import ContinuityError, InputError
from .order import FinitePoset, FiniteProset, bits, is_monotone, transitive_closure


@dataclass(frozen=True)
class Decomposition:
    """A family of labelled point-subsets ``e_λ`` of a finite space.

    Disjointness and covering are *not* enforced here so that
    :func:`is_stratification` can report on arbitrary families.
    """

    space: FiniteSpace
    labels: tuple[str, ...]
    pieces: tuple[int, ...]

    @classmethod
    def from_labels(cls, space: FiniteSpace, pieces: Mapping[str, Sequence[str]]):
        labels = tuple(pieces)
        masks = []
        for lam in labels:
            pts = list(pieces[lam])
            bad = [x for x in pts if x not in space._index]
            if bad:
                raise InputError(f"piece {lam!r} mentions unknown points", witness=bad)
            masks.append(space.mask(pts))
        return cls(space, labels, tuple(masks))

    def __post_init__(self):
        if len(self.labels) != len(self.pieces):
            raise InputError("one piece per label is required")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate piece labels")
        for lam, e in zip(self.labels, self.pieces):
            if not e:
                raise InputError(f"piece {lam!r} is empty")

    def is_partition(self) -> bool:
        return _overlap(self) is None and _uncovered(self) == 0

    def projection(self) -> tuple[int, ...]:
        """Index of the piece containing each point."""
        if not self.is_partition():
            raise InputError("pieces do not partition the space")
        where = [0] * len(self.space)
        for k, e in enumerate(self.pieces):
            for i in bits(e):
                where[i] = k
        return tuple(where)


def _overlap(d: Decomposition):
    for a in range(len(d.pieces)):
        for b in range(a + 1, len(d.pieces)):
            if d.pieces[a] & d.pieces[b]:
                return a, b
    return None


def _uncovered(d: Decomposition) -> int:
    covered = 0
    for e in d.pieces:
        covered |= e
    return d.space.full & ~covered


def quotient_topology(d: Decomposition) -> FiniteSpace:
    """Finest topology on the labels making the projection continuous.

    ``V`` is open iff the union of its pieces is open.  The minimal open set
    of ``λ`` is the least saturated open set containing ``e_λ``.
    """
    where = d.projection()
    minimal = []
    for k in range(len(d.pieces)):
        v = 1 << k
        while True:
            union = 0
            for j in bits(v):
                union |= d.pieces[j]
            hull = d.space.open_hull(union)
            grown = v
            for i in bits(hull):
                grown |= 1 << where[i]
            if grown == v:
                break
            v = grown
        minimal.append(v)
    return FiniteSpace(d.labels, minimal)


def frontier_condition(d: Decomposition) -> bool:
    return _frontier_witness(d) is None


def _frontier_witness(d: Decomposition):
    cl = [d.space.closure(e) for e in d.pieces]
    for a, ea in enumerate(d.pieces):
        for b in range(len(d.pieces)):
            if ea & cl[b] and ea & ~cl[b]:
                return a, b
    return None


def star_order(d: Decomposition) -> FiniteProset:
    """``λ <=* μ`` iff ``e_λ ⊆ cl(e_μ)`` (reflexive-transitive closure)."""
    cl = [d.space.closure(e) for e in d.pieces]
    pairs = [
        (d.labels[a], d.labels[b])
        for a, ea in enumerate(d.pieces)
        for b in range(len(d.pieces))
        if ea & ~cl[b] == 0
    ]
    return transitive_closure(d.labels, pairs)


@dataclass(frozen=True)
class StratificationReport:
    disjoint: bool
    covering: bool
    locally_closed: bool
    frontier: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.disjoint and self.covering and self.locally_closed and self.frontier

    def to_json(self) -> dict:
        return {
            "disjoint": self.disjoint,
            "covering": self.covering,
            "locally_closed": self.locally_closed,
            "frontier": self.frontier,
            "stratification": self.ok,
            "witnesses": self.witnesses,
        }


def is_stratification(d: Decomposition) -> StratificationReport:
    """Check the four conditions: disjoint, covering, locally closed, frontier."""
    s, w = d.space, {}
    ov = _overlap(d)
    if ov is not None:
        a, b = ov
        w["disjoint"] = {"pieces": [d.labels[a], d.labels[b]], "common": s.labels(d.pieces[a] & d.pieces[b])}
    unc = _uncovered(d)
    if unc:
        w["covering"] = {"uncovered": s.labels(unc)}
    not_lc = [lam for lam, e in zip(d.labels, d.pieces) if not is_locally_closed(e, s)]
    if not_lc:
        w["locally_closed"] = {"pieces": not_lc}
    fr = _frontier_witness(d)
    if fr is not None:
        a, b = fr
        w["frontier"] = {
            "piece": d.labels[a],
            "closure_of": d.labels[b],
            "meets": s.labels(d.pieces[a] & s.closure(d.pieces[b])),
            "outside": s.labels(d.pieces[a] & ~s.closure(d.pieces[b])),
        }
    return StratificationReport(ov is None, unc == 0, not not_lc, fr is None, w)


@dataclass(frozen=True)
class StratifiedSpace:
    """A space with a continuous projection onto a poset's Alexandroff space."""

    space: FiniteSpace
    poset: FinitePoset
    projection: tuple[int, ...]

    def stratum(self, label: str) -> list[str]:
        k = self.poset.index(label)
        return [p for p, v in zip(self.space.points, self.projection) if v == k]


def make_stratified(space: FiniteSpace, poset: FiniteProset, projection) -> StratifiedSpace:
    """Validate ``projection`` as a continuous map into ``τ_≤`` of ``poset``.

    Raises :class:`ContinuityError` carrying the basic open set of the poset
    whose preimage fails to be open.
    """
    if not isinstance(poset, FinitePoset):
        poset = FinitePoset(poset.elements, poset.up)
    assignment = point_map(projection, space, poset)
    for y in range(len(poset)):
        u = poset.up[y]
        pre = 0
        for x, fx in enumerate(assignment):
            if u >> fx & 1:
                pre |= 1 << x
        if not space.is_open(pre):
            raise ContinuityError(
                "projection is not continuous",
                witness={"open": poset.labels(u), "preimage": space.labels(pre)},
            )
    return StratifiedSpace(space, poset, assignment)


@dataclass(frozen=True)
class StratMorphism:
    """A continuous map of spaces with a monotone map of posets over it."""

    source: StratifiedSpace
    target: StratifiedSpace
    space_map: tuple[int, ...]
    poset_map: tuple[int, ...]


def check_morphism(m: StratMorphism) -> bool:
    return not morphism_failures(m)


def morphism_failures(m: StratMorphism) -> list[str]:
    out = []
    if len(m.space_map) != len(m.source.space) or len(m.poset_map) != len(m.source.poset):
        return ["maps are not total"]
    if not is_continuous(m.space_map, m.source.space, m.target.space):
        out.append("space map is not continuous")
    if not is_monotone(m.source.poset, m.target.poset, m.poset_map):
        out.append("poset map is not monotone")
    for x, fx in enumerate(m.space_map):
        if m.target.projection[fx] != m.poset_map[m.source.projection[x]]:
            out.append(f"square does not commute at {m.source.space.points[x]!r}")
            break
    return out


def identity_morphism(s: StratifiedSpace) -> StratMorphism:
    return StratMorphism(s, s, tuple(range(len(s.space))), tuple(range(len(s.poset))))


def quotient_specialization(d: Decomposition) -> FiniteProset:
    return specialization_order(quotient_topology(d))


def alexandroff_projection_ok(d: Decomposition) -> bool:
    """Whether the projection is continuous into ``τ_{<=*}``."""
    return is_continuous(d.projection(), d.space, to_space(star_order(d)))
