"""Finitely generated abelian groups, their subgroups and homomorphisms.

A group ``Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`` has coordinates ``rank + k``: free
coordinates first, then torsion coordinates reduced modulo ``d_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Sequence

from .errors import InputError
from .intlinalg import column_hnf, hnf_contains, invariant_factors


@dataclass(frozen=True)
class FgAbGroup:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise InputError("rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise InputError("invariant factors must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise InputError("invariant factors must form a divisibility chain")

    @classmethod
    def cyclic(cls, n: int = 0) -> "FgAbGroup":
        """``Z`` for ``n = 0``, ``Z/n`` otherwise (trivial for ``n = 1``)."""
        n = abs(n)
        if n == 0:
            return cls(1)
        return cls(0, (n,) if n > 1 else ())

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per coordinate: 0 for free, ``d`` for torsion."""
        return (0,) * self.rank + self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ngens:
            raise InputError("vector has the wrong number of coordinates")
        return tuple(x % d if d else x for x, d in zip(v, self.moduli))

    def __str__(self):
        parts = ["Z"] * min(self.rank, 1)
        if self.rank > 1:
            parts = [f"Z^{self.rank}"]
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class Subgroup:
    """A subgroup in canonical form.

    ``basis`` is the column Hermite form of the subgroup's preimage in
    ``Z^ngens`` (the generators together with the torsion relations), so
    equal subgroups have equal representations.
    """

    ambient: FgAbGroup
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def generated_by(cls, ambient: FgAbGroup, gens: Sequence[Sequence[int]]) -> "Subgroup":
        n = ambient.ngens
        cols = [list(g) for g in gens]
        for g in cols:
            if len(g) != n:
                raise InputError("generator has the wrong number of coordinates")
        for i, d in enumerate(ambient.moduli):
            if d:
                e = [0] * n
                e[i] = d
                cols.append(e)
        return cls(ambient, tuple(column_hnf(cols, n)))

    @classmethod
    def trivial(cls, ambient: FgAbGroup) -> "Subgroup":
        return cls.generated_by(ambient, [])

    @classmethod
    def whole(cls, ambient: FgAbGroup) -> "Subgroup":
        n = ambient.ngens
        return cls.generated_by(ambient, [[int(i == j) for j in range(n)] for i in range(n)])

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient.ngens:
            raise InputError("vector has the wrong number of coordinates")
        return hnf_contains(self.basis, v)

    def __le__(self, other: "Subgroup") -> bool:
        return subgroup_leq(self, other)

    def __ge__(self, other: "Subgroup") -> bool:
        return subgroup_leq(other, self)

    @property
    def generators(self) -> list[tuple[int, ...]]:
        """Nonzero reduced generators (torsion relations dropped)."""
        out = []
        for b in self.basis:
            r = self.ambient.reduce(b)
            if any(r) and r not in out:
                out.append(r)
        return out

    @cached_property
    def as_group(self) -> FgAbGroup:
        """Isomorphism type of the subgroup itself."""
        n = self.ambient.ngens
        if not self.basis:
            return FgAbGroup()
        # subgroup = L / (L ∩ R) with R the relation lattice; present L by its
        # basis and the relations expressed in that basis
        k = len(self.basis)
        rels = []
        for i, d in enumerate(self.ambient.moduli):
            if d:
                rels.append(_coords_in_basis(self.basis, [d * int(j == i) for j in range(n)]))
        factors = invariant_factors([list(r) for r in zip(*rels)], cols=len(rels)) if rels else []
        torsion = tuple(f for f in factors if f > 1)
        return FgAbGroup(k - len(factors), torsion)

    @property
    def is_trivial(self) -> bool:
        return self.as_group.is_trivial

    def index(self) -> int | None:
        """``[ambient : self]``, or ``None`` when infinite."""
        if len(self.basis) < self.ambient.ngens:
            return None
        # full-rank triangular lattice inside Z^n: index is the pivot product
        return prod(b[i] for i, b in zip(_pivot_rows(self.basis), self.basis))

    def describe(self) -> str:
        a = self.ambient
        if self.is_trivial:
            return "0"
        if a.rank == 1 and not a.torsion:
            return f"{self.basis[0][0]}Z" if self.basis[0][0] != 1 else "Z"
        idx = self.index()
        if idx == 1:
            return str(a)
        return f"<{', '.join(str(list(g)) for g in self.generators)}> ≅ {self.as_group}"

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "generators": [list(g) for g in self.generators],
            "hnf": [list(b) for b in self.basis],
            "isomorphic_to": self.as_group.to_json(),
            "text": self.describe(),
        }


def _pivot_rows(basis):
    return [next(i for i, e in enumerate(b) if e) for b in basis]


def _coords_in_basis(basis, v) -> list[int]:
    w = list(v)
    out = []
    for b, r in zip(basis, _pivot_rows(basis)):
        q, rem = divmod(w[r], b[r])
        if rem:
            raise InputError("vector is not in the lattice")
        out.append(q)
        w = [x - q * y for x, y in zip(w, b)]
    if any(w):
        raise InputError("vector is not in the lattice")
    return out


def subgroup_leq(a: Subgroup, b: Subgroup) -> bool:
    """``A <= B`` iff ``A ⊆ B``."""
    if a.ambient != b.ambient:
        raise InputError("subgroups live in different ambient groups", witness=[str(a.ambient), str(b.ambient)])
    return all(hnf_contains(b.basis, g) for g in a.basis)


@dataclass(frozen=True)
class AbHom:
    """A homomorphism given by the images (columns) of the domain generators."""

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: tuple[tuple[int, ...], ...]  # codomain.ngens rows, domain.ngens columns

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(m) != self.codomain.ngens or any(len(r) != self.domain.ngens for r in m):
            raise InputError("matrix shape does not match the groups")
        # reduce torsion rows
        m = tuple(tuple(x % d if d else x for x in row) for row, d in zip(m, self.codomain.moduli))
        object.__setattr__(self, "matrix", m)
        for j, d in enumerate(self.domain.moduli):
            if d and not Subgroup.trivial(self.codomain).contains([d * row[j] for row in m]):
                raise InputError("matrix does not respect the torsion of the domain", witness={"generator": j, "order": d})

    @classmethod
    def from_columns(cls, domain, codomain, columns):
        rows = [[c[i] for c in columns] for i in range(codomain.ngens)]
        return cls(domain, codomain, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, g: FgAbGroup) -> "AbHom":
        n = g.ngens
        return cls(g, g, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, domain, codomain) -> "AbHom":
        return cls(domain, codomain, tuple((0,) * domain.ngens for _ in range(codomain.ngens)))

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(row[j] for row in self.matrix) for j in range(self.domain.ngens)]

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        out = [sum(a * b for a, b in zip(row, v)) for row in self.matrix]
        return self.codomain.reduce(out)

    def after(self, other: "AbHom") -> "AbHom":
        """``self ∘ other``."""
        if other.codomain != self.domain:
            raise InputError("homomorphisms are not composable")
        return AbHom.from_columns(other.domain, self.codomain, [self(c) for c in other.columns()])

    def image(self) -> Subgroup:
        return Subgroup.generated_by(self.codomain, self.columns())

    def image_of(self, sub: Subgroup) -> Subgroup:
        if sub.ambient != self.domain:
            raise InputError("subgroup is not in the domain")
        return Subgroup.generated_by(self.codomain, [self(b) for b in sub.basis])

    def __eq__(self, other):
        if not isinstance(other, AbHom):
            return NotImplemented
        return (self.domain, self.codomain, self.matrix) == (other.domain, other.codomain, other.matrix)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix))


def image_subgroup(h: AbHom) -> Subgroup:
    return h.image()


def cyclic_subgroup_of_z(n: int) -> Subgroup:
    """``nZ ⊆ Z``."""
    return Subgroup.generated_by(FgAbGroup(1), [[n]])
