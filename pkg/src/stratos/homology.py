"""Simplicial (co)homology of finite spaces through their order complexes.

The homology of a finite space is that of the order complex of its poset
quotient (nonempty chains), computed with Smith forms over ``Z`` or by
elimination over a prime field ``F_p``.  Over ``F_p`` the groups are
returned as ``(Z/p)^k``, whose subgroups are exactly the subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .abgrp import AbHom, FgAbGroup, Subgroup, subgroup_leq
from .alexandroff import FiniteSpace, specialization_order
from .errors import InputError
from .homotopy import HomotopySet, _flavor, homotopy_classes, postcompose_classes, precompose_classes
from .intlinalg import identity, inverse_unimodular, kernel_mod, matmul, matvec, rref_mod, smith_normal_form
from .order import FinitePoset, FiniteProset, MonotoneMap, as_poset, bits, quotient_by_mutual_leq


@dataclass(frozen=True)
class OrderComplex:
    """Chains of a poset, grouped by dimension, vertices listed bottom-up."""

    poset: FinitePoset
    simplices: tuple[tuple[tuple[int, ...], ...], ...]

    def __getitem__(self, k: int) -> tuple[tuple[int, ...], ...]:
        if 0 <= k < len(self.simplices):
            return self.simplices[k]
        return ()

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def count(self, k: int) -> int:
        return len(self[k])

    def index(self, k: int) -> dict[tuple[int, ...], int]:
        return _index(self, k)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(s) for k, s in enumerate(self.simplices))


@lru_cache(maxsize=1024)
def _index(K: OrderComplex, k: int):
    return {s: i for i, s in enumerate(K[k])}


@lru_cache(maxsize=256)
def order_complex(p: FiniteProset, max_dim: int | None = None) -> OrderComplex:
    """Nonempty chains of ``p`` up to ``max_dim`` (all when ``None``)."""
    p = as_poset(p)
    n = len(p)
    rank = [bin(p.down[i]).count("1") for i in range(n)]
    by_dim: list[list[tuple[int, ...]]] = []

    def grow(chain, top):
        k = len(chain) - 1
        while len(by_dim) <= k:
            by_dim.append([])
        by_dim[k].append(tuple(chain))
        if max_dim is not None and k >= max_dim:
            return
        for y in sorted(bits(p.up[top] & ~(1 << top)), key=lambda j: (rank[j], j)):
            chain.append(y)
            grow(chain, y)
            chain.pop()

    for x in range(n):
        grow([x], x)
    return OrderComplex(p, tuple(tuple(sorted(s)) for s in by_dim))


def boundary(K: OrderComplex, k: int) -> list[list[int]]:
    """Matrix of ``∂_k: C_k -> C_{k-1}`` (rows: (k-1)-simplices)."""
    rows = K.count(k - 1) if k >= 1 else 0
    cols = K.count(k)
    out = [[0] * cols for _ in range(rows)]
    if k < 1:
        return out
    idx = K.index(k - 1)
    for j, s in enumerate(K[k]):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            out[idx[face]][j] += -1 if i % 2 else 1
    return out


def _transpose(m, rows, cols):
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


@dataclass
class HomologyData:
    """A (co)homology group with explicit cycle coordinates.

    ``lifts[i]`` is a cycle representing generator ``i`` of ``group``;
    ``coords(z)`` gives the group coordinates of the class of cycle ``z``.
    """

    group: FgAbGroup
    chain_dim: int
    lifts: list[list[int]]
    coords: Callable[[Sequence[int]], tuple[int, ...]] = field(repr=False)


def _subquotient_z(d_out, out_rows, d_in, in_cols, c) -> HomologyData:
    """``ker(d_out) / im(d_in)`` over Z for ``C = Z^c``."""
    if c == 0:
        return HomologyData(FgAbGroup(), 0, [], lambda z: ())
    if out_rows:
        _, s, v = smith_normal_form(d_out, cols=c)
        r = sum(1 for i in range(min(out_rows, c)) if s[i][i])
    else:
        v, r = identity(c), 0
    z = c - r
    if z == 0:
        return HomologyData(FgAbGroup(), c, [], lambda x: ())
    kernel = [row[r:] for row in v]  # c x z, columns span the cycles
    to_kernel = inverse_unimodular(v)[r:]  # z x c
    if in_cols:
        bc = matmul(to_kernel, d_in, inner=c)
        pmat, dmat, _ = smith_normal_form(bc)
        diag = [dmat[i][i] if i < in_cols else 0 for i in range(z)]
    else:
        pmat, diag = identity(z), [0] * z
    free = [i for i in range(z) if diag[i] == 0]
    tors = [i for i in range(z) if diag[i] > 1]
    group = FgAbGroup(len(free), tuple(diag[i] for i in tors))
    order = free + tors
    moduli = [0] * len(free) + [diag[i] for i in tors]
    pinv = inverse_unimodular(pmat)

    def coords(x):
        y = matvec(pmat, matvec(to_kernel, x))
        return tuple(y[i] % m if m else y[i] for i, m in zip(order, moduli))

    lifts = [matvec(kernel, [row[i] for row in pinv]) for i in order]
    return HomologyData(group, c, lifts, coords)


def _subquotient_p(d_out, out_rows, d_in, in_cols, c, p) -> HomologyData:
    if c == 0:
        return HomologyData(FgAbGroup(), 0, [], lambda z: ())
    cycles = kernel_mod(d_out, p, c) if out_rows else identity(c)
    bound_cols = [[d_in[i][j] % p for i in range(c)] for j in range(in_cols)]
    # columns: boundaries first, then cycles; pivots among cycles pick a complement
    stacked = bound_cols + cycles
    red, piv = rref_mod(_transpose(stacked, len(stacked), c) if stacked else [], p, cols=len(stacked))
    nb = len(bound_cols)
    basis_b = [bound_cols[j] for j in piv if j < nb]
    basis_h = [cycles[j - nb] for j in piv if j >= nb]
    h = len(basis_h)
    group = FgAbGroup(0, (p,) * h)
    system = basis_b + basis_h
    width = len(system)

    def coords(x):
        if not h:
            return ()
        aug = [[system[j][i] for j in range(width)] + [x[i] % p] for i in range(c)]
        red, pivots = rref_mod(aug, p, cols=width + 1)
        if width in pivots:
            raise InputError("chain is not a cycle")
        sol = [0] * width
        for row, pc in zip(red, pivots):
            sol[pc] = row[width]
        return tuple(sol[len(basis_b):])

    return HomologyData(group, c, [list(v) for v in basis_h], coords)


def _normalize_coeff(coeff) -> int:
    if coeff in (None, 0, "Z", "z"):
        return 0
    if isinstance(coeff, str):
        text = coeff.upper()
        if text.startswith("F"):
            text = text[1:]
        try:
            coeff = int(text)
        except ValueError:
            raise InputError(f"coefficients must be Z or F<p>, got {coeff!r}") from None
    p = int(coeff)
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise InputError(f"coefficient field needs a prime, got {p}")
    return p


def _as_proset(space) -> FiniteProset:
    if isinstance(space, FiniteSpace):
        return specialization_order(space)
    if isinstance(space, FiniteProset):
        return space
    raise InputError("expected a finite space or proset")


def _poset_of(space) -> tuple[FinitePoset, MonotoneMap | None]:
    p = _as_proset(space)
    if p.is_partial_order:
        return as_poset(p), None
    q, proj = quotient_by_mutual_leq(p)
    return q, proj


@lru_cache(maxsize=1024)
def _data(p: FinitePoset, n: int, coeff: int, cohomology: bool) -> HomologyData:
    K = order_complex(p, n + 1)
    c = K.count(n)
    if cohomology:
        # δ^n = ∂_{n+1}^T : C^n -> C^{n+1};  δ^{n-1} = ∂_n^T
        d_out = _transpose(boundary(K, n + 1), c, K.count(n + 1)) if K.count(n + 1) else []
        out_rows = K.count(n + 1)
        d_in = _transpose(boundary(K, n), K.count(n - 1), c) if n >= 1 else [[] for _ in range(c)]
        in_cols = K.count(n - 1) if n >= 1 else 0
    else:
        d_out = boundary(K, n) if n >= 1 else []
        out_rows = K.count(n - 1) if n >= 1 else 0
        d_in = boundary(K, n + 1) if K.count(n + 1) else [[] for _ in range(c)]
        in_cols = K.count(n + 1)
    if out_rows == 0:
        d_out = []
    if coeff:
        return _subquotient_p(d_out, out_rows, d_in, in_cols, c, coeff)
    return _subquotient_z(d_out, out_rows, d_in, in_cols, c)


def homology_data(space, n: int, coeff=None, cohomology: bool = False) -> HomologyData:
    if n < 0:
        return HomologyData(FgAbGroup(), 0, [], lambda z: ())
    p, _ = _poset_of(space)
    return _data(p, n, _normalize_coeff(coeff), cohomology)


def homology(space, n: int, coeff=None) -> FgAbGroup:
    return homology_data(space, n, coeff).group


def cohomology(space, n: int, coeff=None) -> FgAbGroup:
    return homology_data(space, n, coeff, cohomology=True).group


def chain_map(f: MonotoneMap, k: int) -> tuple[list[list[int]], OrderComplex, OrderComplex]:
    """Matrix of ``f_#: C_k(X) -> C_k(Y)`` on poset quotients; degenerate chains go to 0."""
    px, projx = _poset_of(f.source)
    py, projy = _poset_of(f.target)
    if projx is None and projy is None:
        assign = f.assignment
    else:
        xs = projx.assignment if projx else tuple(range(len(px)))
        ys = projy.assignment if projy else tuple(range(len(py)))
        assign = [0] * len(px)
        for x, cx in enumerate(xs):
            assign[cx] = ys[f.assignment[x]]
    KX, KY = order_complex(px, k + 1), order_complex(py, k + 1)
    idx = KY.index(k)
    out = [[0] * KX.count(k) for _ in range(KY.count(k))]
    for j, s in enumerate(KX[k]):
        img = tuple(assign[v] for v in s)
        if len(set(img)) == len(img):
            out[idx[img]][j] = 1
    return out, KX, KY


def induced_map(f: MonotoneMap, n: int, coeff=None, cohomology: bool = False) -> AbHom:
    """``f_*: H_n(X) -> H_n(Y)``, or ``f^*: H^n(Y) -> H^n(X)`` with ``cohomology``."""
    hx = homology_data(f.source, n, coeff, cohomology)
    hy = homology_data(f.target, n, coeff, cohomology)
    if n < 0:
        return AbHom.zero(hx.group, hy.group)
    m, KX, KY = chain_map(f, n)
    if cohomology:
        dom, cod = hy, hx
        mt = _transpose(m, KY.count(n), KX.count(n))  # C^n(Y) -> C^n(X)
    else:
        dom, cod = hx, hy
        mt = m
    cols = []
    for z in dom.lifts:
        image = [sum(a * b for a, b in zip(row, z) if a) for row in mt]
        cols.append(cod.coords(image))
    return AbHom.from_columns(dom.group, cod.group, cols)


# -- image-subgroup maps --------------------------------------------------


@dataclass
class ImageReport:
    """``[f] ↦ Im f_*`` (flavor R, homology of the target) or
    ``[f] ↦ Im f^*`` (flavor L, cohomology of the source)."""

    hs: HomotopySet
    flavor: str
    degree: int
    ambient: FgAbGroup
    images: list[Subgroup]
    violations: list[tuple[int, int]]
    quotient_images: list[Subgroup | None]
    well_defined: bool
    triangle_commutes: bool

    @property
    def monotone(self) -> bool:
        return not self.violations

    def subgroup_poset(self) -> FinitePoset:
        """Distinct images ordered by inclusion."""
        distinct = []
        for s in self.images:
            if s not in distinct:
                distinct.append(s)
        names = _subgroup_names(distinct)
        rows = []
        for a in distinct:
            row = 0
            for j, b in enumerate(distinct):
                if subgroup_leq(a, b):
                    row |= 1 << j
            rows.append(row)
        return FinitePoset(names, rows)

    def to_json(self) -> dict:
        q = self.hs.quotient(self.flavor)
        return {
            "schema": "stratos/image-order@1",
            "flavor": self.flavor,
            "kind": "homology" if self.flavor == "R" else "cohomology",
            "degree": self.degree,
            "ambient": self.ambient.to_json(),
            "classes": [
                {"representative": self.hs.labels[c], "image": s.to_json()} for c, s in enumerate(self.images)
            ],
            "quotient": [
                {"class": name, "image": s.to_json() if s is not None else None}
                for name, s in zip(q.poset.elements, self.quotient_images)
            ],
            "monotone": self.monotone,
            "violations": [[self.hs.labels[a], self.hs.labels[b]] for a, b in self.violations],
            "well_defined": self.well_defined,
            "triangle_commutes": self.triangle_commutes,
        }


def _subgroup_names(subs: list[Subgroup]) -> list[str]:
    names = []
    for s in subs:
        base = s.describe()
        name, k = base, 2
        while name in names:
            name = f"{base} #{k}"
            k += 1
        names.append(name)
    return names


def im_H(hs: HomotopySet, flavor: str, degree: int, coeff=None) -> ImageReport:
    flavor = _flavor(flavor)
    if flavor == "LR":
        raise InputError("image maps exist for flavor R (homology) and L (cohomology)")
    cohom = flavor == "L"
    images = [induced_map(hs.representative(c), degree, coeff, cohomology=cohom).image() for c in range(len(hs))]
    ambient = (homology_data(hs.source, degree, coeff, True) if cohom else homology_data(hs.target, degree, coeff)).group
    pre = hs.preorder(flavor)
    violations = [
        (i, j) for i in range(len(hs)) for j in bits(pre.up[i]) if not subgroup_leq(images[i], images[j])
    ]
    q = hs.quotient(flavor)
    quotient_images: list[Subgroup | None] = []
    well_defined = True
    for k in range(len(q.poset)):
        members = q.members(k)
        vals = {images[c] for c in members}
        if len(vals) != 1:
            well_defined = False
            quotient_images.append(None)
        else:
            quotient_images.append(images[members[0]])
    triangle = well_defined and all(
        quotient_images[q.projection.assignment[c]] == images[c] for c in range(len(hs))
    )
    return ImageReport(hs, flavor, degree, ambient, images, violations, quotient_images, well_defined, triangle)


def naturality_cube(hs_src: HomotopySet, g: MonotoneMap, degree: int, coeff=None, hs_dst: HomotopySet | None = None) -> dict:
    """Check the naturality cube of the image maps along ``g``.

    For ``hs_src = [S, X]`` and ``g: X -> Y`` (homology, flavor R):
    ``g_*(Im h_*) = Im (g∘h)_*`` for every class, on classes and on the
    R-quotient.  For ``hs_src = [Y, T]`` and ``g: X -> Y`` the dual
    statement ``g^*(Im h^*) = Im (h∘g)^*`` is checked with flavor L.
    """
    covariant = g.source == hs_src.target
    if not covariant and g.target != hs_src.source:
        raise InputError("map is not composable with the homotopy set")
    if covariant:
        if hs_dst is None:
            hs_dst = homotopy_classes(hs_src.source, g.target, hs_src.budget)
        cmap = postcompose_classes(hs_src, g, hs_dst)
        flavor = "R"
        gh = induced_map(g, degree, coeff)
    else:
        if hs_dst is None:
            hs_dst = homotopy_classes(g.source, hs_src.target, hs_src.budget)
        cmap = precompose_classes(hs_src, g, hs_dst)
        flavor = "L"
        gh = induced_map(g, degree, coeff, cohomology=True)
    src = im_H(hs_src, flavor, degree, coeff)
    dst = im_H(hs_dst, flavor, degree, coeff)
    failures = []
    for c, img in enumerate(src.images):
        if gh.image_of(img) != dst.images[cmap[c]]:
            failures.append(hs_src.labels[c])
    qs, qd = hs_src.quotient(flavor), hs_dst.quotient(flavor)
    quotient_ok = src.well_defined and dst.well_defined
    if quotient_ok:
        for k in range(len(qs.poset)):
            c = qs.members(k)[0]
            if gh.image_of(src.quotient_images[k]) != dst.quotient_images[qd.projection.assignment[cmap[c]]]:
                quotient_ok = False
    return {
        "flavor": flavor,
        "degree": degree,
        "class_face_commutes": not failures,
        "quotient_face_commutes": quotient_ok,
        "failures": failures,
        "source_triangle": src.triangle_commutes,
        "target_triangle": dst.triangle_commutes,
        "commutes": not failures and quotient_ok and src.triangle_commutes and dst.triangle_commutes,
    }


def multiplication_image(n: int) -> Subgroup:
    """``Im(×n: Z -> Z) = (n)``, the image of ``z^n`` on ``H_1`` of the circle."""
    z = FgAbGroup(1)
    return AbHom(z, z, ((n,),)).image()
