"""Homotopy sets parametrised by rational points with monomial composition laws.

A class is a point of ``Q^k``.  Composing with a self-map whose parameters
are ``t`` multiplies coordinate ``i`` of the source coordinate ``σ(i)`` by
the monomial ``t^e_i``.  Deciding ``p <= q`` (``p = q·t`` for some ``t``) is
done exactly: pick which parameters vanish, then solve the remaining
multiplicative system over ``Q*`` one prime at a time plus a sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from sympy import factorint

from .abgrp import FgAbGroup, Subgroup
from .alexandroff import to_space
from .errors import InputError, WellDefinednessError
from .intlinalg import rref_mod, smith_normal_form
from .order import FinitePoset, FiniteProset, bits, hasse_edges, mask_of, quotient_by_mutual_leq


def to_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"not a rational number: {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {x!r}") from None


@dataclass(frozen=True)
class MonomialLaw:
    """Coordinate ``i`` of ``q·t`` is ``q[sources[i]] * prod_j t_j ** exponents[i][j]``."""

    sources: tuple[int, ...]
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(int(s) for s in self.sources))
        object.__setattr__(self, "exponents", tuple(tuple(int(e) for e in row) for row in self.exponents))
        if len(self.sources) != len(self.exponents):
            raise InputError("one exponent vector per coordinate is required")
        widths = {len(e) for e in self.exponents}
        if len(widths) > 1:
            raise InputError("exponent vectors have different lengths")
        for s in self.sources:
            if not 0 <= s < len(self.sources):
                raise InputError(f"source index {s} out of range")
        if any(e < 0 for row in self.exponents for e in row):
            raise InputError("exponents must be nonnegative integers")

    @property
    def dim(self) -> int:
        return len(self.sources)

    @property
    def nparams(self) -> int:
        return len(self.exponents[0]) if self.exponents else 0

    def apply(self, point: Sequence, params: Sequence):
        if len(point) != self.dim or len(params) != self.nparams:
            raise InputError("dimensions do not match the law")
        return tuple(
            point[s] * prod((t**e for t, e in zip(params, row) if e), start=1)
            for s, row in zip(self.sources, self.exponents)
        )

    def to_json(self) -> list[dict]:
        return [{"source": s, "exponents": list(e)} for s, e in zip(self.sources, self.exponents)]


@dataclass(frozen=True)
class ParametricFamily:
    dim: int
    right_law: MonomialLaw
    left_law: MonomialLaw | None = None
    representatives: tuple[tuple[Fraction, ...], ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        reps = tuple(tuple(to_fraction(x) for x in r) for r in self.representatives)
        object.__setattr__(self, "representatives", reps)
        names = tuple(self.names) or tuple(f"p{i}" for i in range(len(reps)))
        object.__setattr__(self, "names", names)
        if len(names) != len(reps):
            raise InputError("one name per representative is required")
        if len(set(names)) != len(names):
            raise InputError("duplicate representative names")
        for law in (self.right_law, self.left_law):
            if law is not None and law.dim != self.dim:
                raise InputError("law dimension differs from the family dimension")
        for r in reps:
            if len(r) != self.dim:
                raise InputError("representative has the wrong dimension", witness=[str(x) for x in r])

    def law(self, flavor: str) -> MonomialLaw:
        flavor = flavor.upper()
        law = self.right_law if flavor == "R" else self.left_law if flavor == "L" else None
        if law is None:
            raise InputError(f"family has no {flavor} law")
        return law

    def point(self, name: str) -> tuple[Fraction, ...]:
        try:
            return self.representatives[self.names.index(name)]
        except ValueError:
            raise InputError(f"unknown representative {name!r}") from None

    def to_json(self) -> dict:
        out = {
            "schema": "stratos/rational-family@1",
            "dim": self.dim,
            "right_law": self.right_law.to_json(),
            "representatives": [{"name": n, "point": [str(x) for x in r]} for n, r in zip(self.names, self.representatives)],
        }
        if self.left_law is not None:
            out["left_law"] = self.left_law.to_json()
        return out


def compose_right(fam, point, params):
    law = fam.right_law if isinstance(fam, ParametricFamily) else fam
    return law.apply(point, params)


def compose_left(fam: ParametricFamily, point, params):
    return fam.law("L").apply(point, params)


# -- exact solver --------------------------------------------------------


def _valuation(r: Fraction, p: int) -> int:
    v, num, den = 0, r.numerator, r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _primes(values: Sequence[Fraction]) -> list[int]:
    found: set[int] = set()
    for r in values:
        found |= set(factorint(abs(r.numerator)))
        found |= set(factorint(r.denominator))
    return sorted(found)


def _solve_int(rows: list[list[int]], rhs: list[int], ncols: int) -> list[int] | None:
    """Integer solution of ``rows · x = rhs`` through the Smith form, or ``None``."""
    if not rows:
        return [0] * ncols
    u, s, v = smith_normal_form(rows, cols=ncols)
    b = [sum(a * x for a, x in zip(row, rhs)) for row in u]
    y = [0] * ncols
    for i, bi in enumerate(b):
        d = s[i][i] if i < ncols else 0
        if d == 0:
            if bi:
                return None
        elif bi % d:
            return None
        else:
            y[i] = bi // d
    return [sum(v[j][k] * y[k] for k in range(ncols)) for j in range(ncols)]


def _solve_mod2(rows: list[list[int]], rhs: list[int], ncols: int) -> list[int] | None:
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref_mod(aug, 2, cols=ncols + 1)
    if ncols in piv:
        return None
    x = [0] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    return x


def _in_image(columns: list[list[int]], target: list[int], modulus: int) -> bool:
    k = len(target)
    ambient = FgAbGroup(k) if modulus == 0 else FgAbGroup(0, (modulus,) * k)
    return Subgroup.generated_by(ambient, columns).contains(target)


@dataclass
class Verdict:
    holds: bool
    params: tuple[Fraction, ...] | None = None
    zero_set: tuple[int, ...] | None = None

    def __bool__(self):
        return self.holds


def solve(law: MonomialLaw, p: Sequence, q: Sequence) -> Verdict:
    """Decide whether ``p = law.apply(q, t)`` for some rational ``t``.

    On success the verdict carries a witness ``t``.  Membership of each
    valuation and sign vector is decided by the Hermite form of the
    exponent lattice; the witness is solved independently through the
    Smith form, and the two must agree.
    """
    p = [to_fraction(x) for x in p]
    q = [to_fraction(x) for x in q]
    if len(p) != law.dim or len(q) != law.dim:
        raise InputError("points have the wrong dimension")
    m = law.nparams
    for zmask in range(1 << m):
        zero = set(bits(zmask))
        free = [j for j in range(m) if j not in zero]
        eqs: list[tuple[list[int], Fraction]] = []
        ok = True
        for i, (s, row) in enumerate(zip(law.sources, law.exponents)):
            src = q[s]
            killed = src == 0 or any(row[j] > 0 for j in zero)
            if killed:
                if p[i] != 0:
                    ok = False
                    break
            elif p[i] == 0:
                ok = False
                break
            else:
                eqs.append(([row[j] for j in free], p[i] / src))
        if not ok:
            continue
        params = _solve_multiplicative(eqs, len(free))
        if params is None:
            continue
        t = [Fraction(0)] * m
        for j, val in zip(free, params):
            t[j] = val
        if law.apply(q, t) != tuple(p):
            raise AssertionError("solver produced a witness that does not substitute")
        return Verdict(True, tuple(t), tuple(sorted(zero)))
    return Verdict(False)


def _solve_multiplicative(eqs, nfree: int) -> list[Fraction] | None:
    """Nonzero rationals ``x`` with ``prod_j x_j^{e_j} = r`` for each ``(e, r)``."""
    rows = [e for e, _ in eqs]
    ratios = [r for _, r in eqs]
    columns = [[row[j] for row in rows] for j in range(nfree)]
    solution = [Fraction(1)] * nfree
    for prime in _primes(ratios):
        vals = [_valuation(r, prime) for r in ratios]
        member = _in_image(columns, vals, 0)
        x = _solve_int(rows, vals, nfree)
        if member != (x is not None):
            raise AssertionError("lattice membership and Smith solve disagree")
        if not member:
            return None
        for j, e in enumerate(x):
            solution[j] *= Fraction(prime) ** e
    signs = [int(r < 0) for r in ratios]
    member = _in_image([[c % 2 for c in col] for col in columns], signs, 2) if eqs else not any(signs)
    x2 = _solve_mod2([[e % 2 for e in row] for row in rows], signs, nfree) if eqs else [0] * nfree
    if member != (x2 is not None):
        raise AssertionError("sign lattice membership and elimination disagree")
    if not member:
        return None
    for j, b in enumerate(x2):
        if b:
            solution[j] = -solution[j]
    return solution


def leq_R(fam, p, q) -> bool:
    """``p <=_R q``: ``p = q ∘ s`` for some self-map parameters ``s``."""
    law = fam.right_law if isinstance(fam, ParametricFamily) else fam
    return solve(law, p, q).holds


def leq_L(fam: ParametricFamily, p, q) -> bool:
    return solve(fam.law("L"), p, q).holds


# -- quotient posets, strata, induced maps ---------------------------------


@dataclass
class RationalQuotient:
    family: ParametricFamily
    flavor: str
    proset: FiniteProset
    poset: FinitePoset
    assignment: tuple[int, ...]  # representative index -> quotient element

    def members(self, k: int) -> list[str]:
        return [n for n, v in zip(self.family.names, self.assignment) if v == k]

    def class_of(self, name: str) -> str:
        return self.poset.elements[self.assignment[self.family.names.index(name)]]

    @property
    def hasse(self) -> list[tuple[str, str]]:
        return hasse_edges(self.poset)

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor,
            "classes": [{"name": e, "members": self.members(k)} for k, e in enumerate(self.poset.elements)],
            "hasse": [list(e) for e in self.hasse],
        }


def quotient_classes(fam: ParametricFamily, flavor: str = "R") -> RationalQuotient:
    law = fam.law(flavor)
    reps = fam.representatives
    rows = []
    for p in reps:
        rows.append(mask_of(j for j, q in enumerate(reps) if solve(law, p, q).holds))
    try:
        pre = FiniteProset(fam.names, rows)
    except InputError as exc:
        raise InputError(f"the {flavor.upper()} law is not a preorder on the representatives: {exc}") from None
    q, proj = quotient_by_mutual_leq(pre)
    return RationalQuotient(fam, flavor.upper(), pre, q, proj.assignment)


def zero_pattern(point: Sequence[Fraction], coords: Sequence[str] | None = None) -> str:
    coords = coords or [f"x{i}" for i in range(len(point))]
    return ", ".join(f"{c} = 0" if v == 0 else f"{c} ≠ 0" for c, v in zip(coords, point))


@dataclass
class StrataReport:
    quotient: RationalQuotient
    descriptions: dict[str, str]
    closures: dict[str, list[str]]  # stratum -> strata contained in its closure
    patterns_distinct: bool
    patterns_cover: bool

    def closure_contains(self, outer: str, inner: str) -> bool:
        """Whether ``e_inner ⊆ cl(e_outer)``."""
        return inner in self.closures[outer]

    def to_json(self) -> dict:
        return {
            "strata": [
                {"name": n, "description": self.descriptions[n], "closure_contains": self.closures[n]}
                for n in self.quotient.poset.elements
            ],
            "patterns_distinct": self.patterns_distinct,
            "patterns_cover": self.patterns_cover,
        }


def strata_report(fam: ParametricFamily, flavor: str = "R", coords: Sequence[str] | None = None) -> StrataReport:
    """Strata of ``Q^k`` pulled back from the quotient poset.

    Opens of the poset are its up-sets, so the closure of a stratum is the
    union of the strata below it; closures are computed in the finite space
    of the quotient poset.
    """
    q = quotient_classes(fam, flavor)
    space = to_space(q.poset)
    descriptions, closures, patterns = {}, {}, []
    for k, name in enumerate(q.poset.elements):
        rep = fam.point(q.members(k)[0])
        descriptions[name] = "{" + zero_pattern(rep, coords) + "}"
        patterns.append(tuple(v == 0 for v in rep))
        closures[name] = space.labels(space.closure(1 << k))
    return StrataReport(
        q,
        descriptions,
        closures,
        patterns_distinct=len(set(patterns)) == len(patterns),
        patterns_cover=len(set(patterns)) == 2**fam.dim,
    )


@dataclass(frozen=True)
class Monomial:
    coeff: Fraction
    exponents: tuple[int, ...]

    def __call__(self, point):
        return self.coeff * prod((x**e for x, e in zip(point, self.exponents) if e), start=Fraction(1))


@dataclass
class InducedMapReport:
    source: RationalQuotient
    target: RationalQuotient
    on_representatives: dict[str, str]
    on_classes: dict[str, str]
    monotone: bool
    violations: list[tuple[str, str]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "on_representatives": self.on_representatives,
            "on_classes": self.on_classes,
            "monotone": self.monotone,
            "violations": [list(v) for v in self.violations],
        }


def induced_map(fam1: ParametricFamily, fam2: ParametricFamily, polymap: Sequence[Monomial], flavor: str = "R") -> InducedMapReport:
    """Class map induced by a monomial map ``Q^k -> Q^l`` on the quotient posets."""
    if len(polymap) != fam2.dim or any(len(m.exponents) != fam1.dim for m in polymap):
        raise InputError("polynomial map does not match the family dimensions")
    q1, q2 = quotient_classes(fam1, flavor), quotient_classes(fam2, flavor)
    law2 = fam2.law(flavor)
    on_reps = {}
    for name, point in zip(fam1.names, fam1.representatives):
        image = tuple(m(point) for m in polymap)
        hits = [
            n2 for n2, r2 in zip(fam2.names, fam2.representatives)
            if solve(law2, image, r2).holds and solve(law2, r2, image).holds
        ]
        if not hits:
            raise WellDefinednessError(
                "image of a representative is in no listed class",
                witness={"representative": name, "image": [str(x) for x in image]},
            )
        on_reps[name] = q2.class_of(hits[0])
    on_classes: dict[str, str] = {}
    for k, cls in enumerate(q1.poset.elements):
        members = q1.members(k)
        images = {on_reps[m] for m in members}
        if len(images) > 1:
            a = members[0]
            b = next(m for m in members if on_reps[m] != on_reps[a])
            raise WellDefinednessError("class map is not well defined", witness=[a, b])
        on_classes[cls] = images.pop()
    violations = []
    for a, b in q1.poset.strict_pairs():
        ia, ib = q2.poset.index(on_classes[a]), q2.poset.index(on_classes[b])
        if not q2.poset.leq(ia, ib):
            violations.append((a, b))
    return InducedMapReport(q1, q2, on_reps, on_classes, not violations, violations)


# -- the two-law example ---------------------------------------------------

EX1_POINTS = ((0, 0), (1, 0), (0, 1), (1, 1))


def example_ex1() -> dict:
    """Two families on ``Q x Q`` and the map ``(a, b) ↦ (a, ab)`` between them.

    Law 1: ``(a, b)·(c, d) = (ac, bd)``.  Law 2: ``(a, b)·(c, d) = (ac, bcd)``,
    the degree count forced when the second generator is sent to a product.
    """
    law1 = MonomialLaw((0, 1), ((1, 0), (0, 1)))
    law2 = MonomialLaw((0, 1), ((1, 0), (1, 1)))
    fam1 = ParametricFamily(2, law1, representatives=EX1_POINTS, names=("alpha", "beta", "gamma", "delta"))
    fam2 = ParametricFamily(2, law2, representatives=EX1_POINTS, names=("alpha'", "beta'", "gamma'", "delta'"))
    polymap = (Monomial(Fraction(1), (1, 0)), Monomial(Fraction(1), (1, 1)))
    return {"law1": fam1, "law2": fam2, "polymap": polymap, "coords": ("a", "b")}


def example_ex1_report() -> dict:
    ex = example_ex1()
    q1, q2 = quotient_classes(ex["law1"]), quotient_classes(ex["law2"])
    s1, s2 = strata_report(ex["law1"], coords=ex["coords"]), strata_report(ex["law2"], coords=ex["coords"])
    f = induced_map(ex["law1"], ex["law2"], ex["polymap"])
    return {
        "schema": "stratos/rational-ex1@1",
        "law1": {"family": ex["law1"].to_json(), "quotient": q1.to_json(), "strata": s1.to_json()},
        "law2": {"family": ex["law2"].to_json(), "quotient": q2.to_json(), "strata": s2.to_json()},
        "induced_map": {"polymap": "(a, b) -> (a, ab)", **f.to_json()},
        "closure_facts": {
            "law1: cl(delta) contains every stratum": all(s1.closure_contains("delta", n) for n in q1.poset.elements),
            "law2: cl(delta') contains gamma'": s2.closure_contains("delta'", "gamma'"),
        },
    }


def family_from_json(data: dict) -> ParametricFamily:
    def law(rows):
        return MonomialLaw(tuple(r["source"] for r in rows), tuple(tuple(r["exponents"]) for r in rows))

    reps = data.get("representatives", [])
    return ParametricFamily(
        data["dim"],
        law(data["right_law"]),
        law(data["left_law"]) if "left_law" in data else None,
        tuple(tuple(r["point"]) for r in reps),
        tuple(r["name"] for r in reps),
    )


def family_report(fam: ParametricFamily) -> dict:
    out = {"schema": "stratos/rational-report@1", "family": fam.to_json()}
    for flavor, law in (("R", fam.right_law), ("L", fam.left_law)):
        if law is None:
            continue
        q = quotient_classes(fam, flavor)
        out[flavor] = {"quotient": q.to_json(), "strata": strata_report(fam, flavor).to_json()}
    return out


__all__ = [
    "Monomial",
    "MonomialLaw",
    "ParametricFamily",
    "RationalQuotient",
    "StrataReport",
    "Verdict",
    "compose_left",
    "compose_right",
    "example_ex1",
    "example_ex1_report",
    "family_from_json",
    "family_report",
    "induced_map",
    "leq_L",
    "leq_R",
    "quotient_classes",
    "solve",
    "strata_report",
    "zero_pattern",
]
