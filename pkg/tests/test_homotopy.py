import random

import pytest

from stratos.errors import InputError, SizeError
from stratos.generators import random_proset
from stratos.homotopy import (
    HomotopySet,
    all_monotone_maps,
    compose_morphisms,
    default_budget,
    homotopy_classes,
    monotone_assignments,
    pullback,
    pushforward,
)
from stratos.models import chain, circle_model, point, pseudocircle
from stratos.order import MonotoneMap
from stratos.stratify import check_morphism

import oracles


S = pseudocircle()


def test_maps_from_a_point():
    assert len(all_monotone_maps(point(), S)) == 4


def test_maps_between_two_chains():
    c = chain(2)
    assert [m.label for m in all_monotone_maps(c, c)] == ["[c0,c0]", "[c0,c1]", "[c1,c1]"]


def test_pseudocircle_self_maps_against_brute_force():
    maps = monotone_assignments(S, S)
    assert sorted(maps) == sorted(oracles.monotone_maps(S, S))
    assert len(maps) == 36
    autos = [a for a in maps if len(set(a)) == 4]
    consts = [a for a in maps if len(set(a)) == 1]
    assert len(autos) == 4 and len(consts) == 4


def test_maps_are_listed_lexicographically():
    keys = [m.key for m in all_monotone_maps(S, S)]
    assert keys == sorted(keys)


def test_pseudocircle_classes():
    hs = homotopy_classes(S, S)
    assert len(hs) == 5
    sizes = sorted(len(c) for c in hs.classes)
    assert sizes == [1, 1, 1, 1, 32]
    assert hs.labels[0] == "[a,a,a,a]"


def test_target_with_maximum_gives_one_class():
    Y = poset_with_max()
    assert len(homotopy_classes(S, Y)) == 1


def poset_with_max():
    from stratos.models import cone

    return cone(pseudocircle())


def test_double_cover_class_exists():
    C8, C4 = circle_model(4), circle_model(2, prefix="y")
    hs = homotopy_classes(C8, C4)
    cover = tuple(i % 4 for i in range(8))
    c = hs.class_index(cover)
    assert c not in hs.constant_classes
    assert len(hs) == 7


def _check_against_oracle(X, Y):
    hs = homotopy_classes(X, Y)
    comp = oracles.fence_components(X, Y)
    for k, a in enumerate(hs.maps):
        for j, b in enumerate(hs.maps):
            assert (comp[a] == comp[b]) == (hs.class_of[k] == hs.class_of[j])
    for flavor in ("R", "L", "LR"):
        roots, comp2, pairs = oracles.preorder_brute(X, Y, flavor)
        pre = hs.preorder(flavor)
        for f in range(len(hs)):
            for g in range(len(hs)):
                rf, rg = comp[hs.rep_assignments[f]], comp[hs.rep_assignments[g]]
                assert pre.leq(f, g) == ((rf, rg) in pairs), (flavor, hs.labels[f], hs.labels[g])


def test_pseudocircle_preorders_against_brute_force():
    _check_against_oracle(S, S)


@pytest.mark.parametrize("seed", range(25))
def test_random_homotopy_sets_against_brute_force(seed):
    rng = random.Random(seed)
    X = random_proset(rng, rng.randint(1, 4), 0.3)
    Y = random_proset(rng, rng.randint(1, 4), 0.3)
    _check_against_oracle(X, Y)


def test_pseudocircle_r_quotient_is_a_two_chain():
    hs = homotopy_classes(S, S)
    for flavor in ("R", "L", "LR"):
        q = hs.quotient(flavor)
        assert q.poset.elements == ("[a,a,a,a]", "[a,b,c,d]")
        assert q.poset.strict_pairs() == [("[a,a,a,a]", "[a,b,c,d]")]
        q.stratified()


def test_automorphisms_are_r_equivalent():
    hs = homotopy_classes(S, S)
    pre = hs.preorder("R")
    ident = hs.class_index(MonotoneMap.identity(S))
    flip = hs.class_index((0, 1, 3, 2))
    const = hs.class_index((0, 0, 0, 0))
    assert pre.leq(ident, flip) and pre.leq(flip, ident)
    assert pre.leq(const, ident) and not pre.leq(ident, const)


def test_point_target_has_one_point_quotient():
    hs = homotopy_classes(S, point())
    assert len(hs.quotient("LR").poset) == 1


@pytest.mark.parametrize("seed", range(10))
def test_homotopy_is_a_congruence(seed):
    rng = random.Random(100 + seed)
    X, Y, Z = (random_proset(rng, rng.randint(1, 3), 0.4) for _ in range(3))
    hxy, hyz, hxz = homotopy_classes(X, Y), homotopy_classes(Y, Z), homotopy_classes(X, Z)
    for f in hxy.maps:
        for f2 in hxy.members(hxy.class_index(f)):
            for g in hyz.maps[:6]:
                for g2 in hyz.members(hyz.class_index(g))[:4]:
                    a = tuple(g[v] for v in f)
                    b = tuple(g2.assignment[v] for v in f2.assignment)
                    assert hxz.homotopic(a, b)


def test_flavor_inclusions(rng):
    for _ in range(15):
        X = random_proset(rng, rng.randint(1, 4))
        Y = random_proset(rng, rng.randint(1, 4))
        hs = homotopy_classes(X, Y)
        r, l, lr = hs.preorder("R"), hs.preorder("L"), hs.preorder("LR")
        for i in range(len(hs)):
            assert r.up[i] & ~lr.up[i] == 0
            assert l.up[i] & ~lr.up[i] == 0


def test_pushforward_of_swap_permutes_automorphisms():
    hs = homotopy_classes(S, S)
    swap = MonotoneMap(S, S, (0, 1, 3, 2))
    m = pushforward(hs, swap)
    assert check_morphism(m)
    const = hs.class_index((0, 0, 0, 0))
    assert m.space_map[const] == const
    autos = [c for c in range(len(hs)) if c != const]
    assert sorted(m.space_map[c] for c in autos) == autos
    assert any(m.space_map[c] != c for c in autos)


def test_pushforward_identity_and_constant():
    hs = homotopy_classes(S, S)
    m = pushforward(hs, MonotoneMap.identity(S))
    assert m.space_map == tuple(range(len(hs)))
    m = pushforward(hs, MonotoneMap.constant(S, S, 2))
    assert set(m.space_map) == {hs.class_index((2, 2, 2, 2))}


def _random_map(rng, X, Y):
    return MonotoneMap(X, Y, rng.choice(oracles.monotone_maps(X, Y)))


@pytest.mark.parametrize("seed", range(12))
def test_functor_laws(seed):
    rng = random.Random(7 * seed + 1)
    Sx, X, Y, Z = (random_proset(rng, rng.randint(1, 3), 0.4) for _ in range(4))
    g, h = _random_map(rng, X, Y), _random_map(rng, Y, Z)
    hs = homotopy_classes(Sx, X)
    gs, hs2 = pushforward(hs, g), pushforward(homotopy_classes(Sx, Y), h)
    assert compose_morphisms(gs, hs2) == (
        pushforward(hs, g.then(h)).space_map,
        pushforward(hs, g.then(h)).poset_map,
    )
    # contravariant: (h∘g)^* = g^* ∘ h^*
    T = random_proset(rng, rng.randint(1, 3), 0.4)
    hzt = homotopy_classes(Z, T)
    hstar = pullback(hzt, h)
    gstar = pullback(homotopy_classes(Y, T), g)
    both = pullback(hzt, g.then(h))
    assert compose_morphisms(hstar, gstar) == (both.space_map, both.poset_map)
    ident = pullback(hzt, MonotoneMap.identity(Z))
    assert ident.space_map == tuple(range(len(hzt)))


def test_budget_is_enforced():
    with pytest.raises(SizeError) as exc:
        HomotopySet(circle_model(4), circle_model(4), budget=100)
    assert exc.value.witness["budget"] == 100


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("STRATOS_BUDGET", "12345")
    assert default_budget() == 12345
    monkeypatch.setenv("STRATOS_BUDGET", "lots")
    with pytest.raises(InputError):
        default_budget()


def test_class_index_rejects_non_maps():
    hs = homotopy_classes(S, S)
    with pytest.raises(InputError):
        hs.class_index((0, 0, 0, 9))


def test_report_shape():
    from stratos.homotopy import report

    r = report(homotopy_classes(S, S), "R")
    assert r["maps"] == 36
    assert r["quotient"]["hasse"] == [["[a,a,a,a]", "[a,b,c,d]"]]


def test_classes_on_spaces_with_equivalent_points():
    from stratos.order import transitive_closure

    blob = transitive_closure("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
    hs = homotopy_classes(blob, blob)
    assert len(hs.maps) == 5**5 and len(hs) == 1
    X = transitive_closure("abc", [("a", "b"), ("b", "a"), ("a", "c")])
    Y = transitive_closure("wxyz", [("w", "y"), ("x", "y"), ("w", "z"), ("x", "z"), ("y", "z"), ("z", "y")])
    _check_against_oracle(X, Y)
    _check_against_oracle(Y, X)
