import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from stratos.errors import InputError, WellDefinednessError
from stratos.rational_toy import (
    EX1_POINTS,
    Monomial,
    MonomialLaw,
    ParametricFamily,
    compose_left,
    compose_right,
    example_ex1,
    example_ex1_report,
    family_from_json,
    family_report,
    induced_map,
    leq_L,
    leq_R,
    quotient_classes,
    solve,
    strata_report,
    zero_pattern,
)

EX = example_ex1()
LAW1, LAW2 = EX["law1"].right_law, EX["law2"].right_law
GRID = sorted({Fraction(0)} | {s * Fraction(a, b) for s in (1, -1) for a in (1, 2, 3, 4) for b in (1, 2, 3)})


def grid_witness(law, p, q):
    for t in product(GRID, repeat=law.nparams):
        if law.apply(q, t) == tuple(Fraction(x) for x in p):
            return t
    return None


def test_composition_laws():
    assert compose_right(LAW2, (1, 1), (1, 0)) == (1, 0)
    assert compose_right(LAW1, (1, 1), (0, 1)) == (0, 1)
    assert compose_right(LAW1, (2, 3), (5, 7)) == (10, 21)
    assert compose_right(LAW2, (2, 3), (5, 7)) == (10, 105)
    for law in (LAW1, LAW2):
        assert compose_right(law, (Fraction(2, 3), -5), (1, 1)) == (Fraction(2, 3), -5)


def test_example_verdicts():
    assert not leq_R(LAW2, (0, 1), (1, 1))
    assert leq_R(LAW1, (0, 1), (1, 1))
    assert solve(LAW1, (0, 1), (1, 1)).params == (0, 1)
    for p in EX1_POINTS:
        assert leq_R(LAW1, p, p) and leq_R(LAW2, p, p)


def test_signs_and_valuations():
    cube = MonomialLaw((0,), ((3,),))
    square = MonomialLaw((0,), ((2,),))
    assert leq_R(cube, (-8,), (1,))
    assert solve(cube, (-8,), (1,)).params == (-2,)
    assert not leq_R(square, (-4,), (1,))
    assert leq_R(square, (Fraction(9, 4),), (1,))
    assert not leq_R(square, (2,), (1,))
    both = MonomialLaw((0, 1), ((2,), (3,)))
    assert leq_R(both, (4, -8), (1, 1))
    assert not leq_R(both, (4, 27), (1, 1))
    assert not leq_R(both, (4, 8), (-1, 1))


def test_quotient_diagrams():
    q1 = quotient_classes(EX["law1"])
    assert sorted(q1.hasse) == [("alpha", "beta"), ("alpha", "gamma"), ("beta", "delta"), ("gamma", "delta")]
    q2 = quotient_classes(EX["law2"])
    assert sorted(q2.hasse) == [("alpha'", "beta'"), ("alpha'", "gamma'"), ("beta'", "delta'")]
    single = ParametricFamily(2, LAW1, representatives=[(3, 4)])
    assert len(quotient_classes(single).poset) == 1


def test_mutually_related_points_share_a_class():
    fam = ParametricFamily(2, LAW1, representatives=[(1, 1), (2, -3), (0, 5)], names=("u", "v", "w"))
    q = quotient_classes(fam)
    assert q.class_of("u") == q.class_of("v") != q.class_of("w")
    assert q.poset.is_partial_order


def test_strata_and_closures():
    s1 = strata_report(EX["law1"], coords=("a", "b"))
    assert all(s1.closure_contains("delta", n) for n in ("alpha", "beta", "gamma", "delta"))
    assert s1.patterns_distinct and s1.patterns_cover
    assert s1.descriptions["beta"] == "{a ≠ 0, b = 0}"
    s2 = strata_report(EX["law2"], coords=("a", "b"))
    assert not s2.closure_contains("delta'", "gamma'")
    assert s2.closure_contains("delta'", "beta'")
    one = strata_report(ParametricFamily(1, MonomialLaw((0,), ((1,),)), representatives=[(2,)]))
    assert one.closures == {"p0": ["p0"]}
    assert zero_pattern((0, 3)) == "x0 = 0, x1 ≠ 0"


def test_induced_map_table():
    rep = induced_map(EX["law1"], EX["law2"], EX["polymap"])
    assert rep.on_classes == {"alpha": "alpha'", "beta": "beta'", "gamma": "alpha'", "delta": "delta'"}
    assert rep.monotone


def test_identity_and_zero_polymaps():
    ident = (Monomial(Fraction(1), (1, 0)), Monomial(Fraction(1), (0, 1)))
    rep = induced_map(EX["law1"], EX["law1"], ident)
    assert rep.on_classes == {n: n for n in ("alpha", "beta", "gamma", "delta")}
    zero = (Monomial(Fraction(0), (0, 0)), Monomial(Fraction(0), (0, 0)))
    rep = induced_map(EX["law1"], EX["law2"], zero)
    assert set(rep.on_classes.values()) == {"alpha'"}


def test_ill_defined_class_map():
    fam1 = ParametricFamily(1, MonomialLaw((0,), ((2,),)), representatives=[(1,), (4,), (0,)], names=("one", "four", "zero"))
    fam2 = ParametricFamily(1, MonomialLaw((0,), ((1,),)), representatives=[(1,), (0,)], names=("u", "z"))
    assert quotient_classes(fam1).class_of("one") == quotient_classes(fam1).class_of("four")
    with pytest.raises(WellDefinednessError):
        induced_map(fam2, fam1, (Monomial(Fraction(2), (1,)),))
    fam4 = ParametricFamily(1, MonomialLaw((0,), ((4,),)), representatives=[(1,), (4,), (0,)], names=("one", "four", "zero"))
    with pytest.raises(WellDefinednessError) as err:
        induced_map(fam1, fam4, (Monomial(Fraction(1), (1,)),))
    assert sorted(err.value.witness) == ["four", "one"]


def test_left_law():
    fam = ParametricFamily(2, LAW1, left_law=MonomialLaw((0, 1), ((1,), (2,))), representatives=EX1_POINTS)
    assert compose_left(fam, (2, 3), (5,)) == (10, 75)
    assert leq_L(fam, (0, 0), (1, 1))
    assert leq_L(fam, (-2, 4), (1, 1))
    assert not leq_L(fam, (2, -4), (1, 1))
    assert not leq_L(fam, (1, 0), (1, 1))
    rep = family_report(fam)
    assert set(rep) >= {"R", "L"}
    assert len(quotient_classes(fam, "L").poset) == 4


def test_law_without_identity_is_rejected():
    swap = MonomialLaw((1, 0), ((1,), (0,)))
    fam = ParametricFamily(2, LAW1, left_law=swap, representatives=EX1_POINTS)
    with pytest.raises(InputError):
        quotient_classes(fam, "L")


def test_bad_inputs():
    with pytest.raises(InputError):
        MonomialLaw((0, 1), ((1,),))
    with pytest.raises(InputError):
        MonomialLaw((0,), ((-1,),))
    with pytest.raises(InputError):
        MonomialLaw((2,), ((1,),))
    with pytest.raises(InputError):
        ParametricFamily(2, LAW1, representatives=[(1,)])
    with pytest.raises(InputError):
        solve(LAW1, (1,), (1, 1))
    with pytest.raises(InputError):
        EX["law1"].law("L")
    with pytest.raises(InputError):
        ParametricFamily(1, MonomialLaw((0,), ((1,),)), representatives=[("x",)])


def test_family_json_roundtrip():
    fam = EX["law2"]
    back = family_from_json(fam.to_json())
    assert back == fam


def random_law(rng, dim, nparams):
    return MonomialLaw(
        tuple(rng.randrange(dim) for _ in range(dim)),
        tuple(tuple(rng.randint(0, 3) for _ in range(nparams)) for _ in range(dim)),
    )


def test_agrees_with_grid_search():
    rng = random.Random(7)
    values = [Fraction(v) for v in (0, 1, -1, 2, -2, 3, 4, -8, 9)] + [Fraction(1, 2), Fraction(-9, 4)]
    found = 0
    for _ in range(300):
        law = random_law(rng, 2, rng.randint(1, 2))
        q = tuple(rng.choice(values) for _ in range(2))
        if rng.random() < 0.5:
            p = law.apply(q, [rng.choice(GRID) for _ in range(law.nparams)])
        else:
            p = tuple(rng.choice(values) for _ in range(2))
        verdict = solve(law, p, q)
        if verdict.holds:
            assert law.apply(q, verdict.params) == p
        w = grid_witness(law, p, q)
        if w is not None:
            found += 1
            assert verdict.holds
    assert found > 150


@given(
    st.integers(1, 3).flatmap(
        lambda d: st.tuples(
            st.just(d),
            st.lists(st.integers(0, d - 1), min_size=d, max_size=d),
            st.lists(st.lists(st.integers(0, 4), min_size=2, max_size=2), min_size=d, max_size=d),
            st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=d, max_size=d),
            st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=2, max_size=2),
        )
    )
)
@settings(max_examples=300, deadline=None)
def test_images_are_always_below(data):
    d, sources, exps, q, t = data
    law = MonomialLaw(tuple(sources), tuple(map(tuple, exps)))
    p = law.apply(q, t)
    verdict = solve(law, p, q)
    assert verdict.holds
    assert law.apply(q, verdict.params) == p


def test_monoid_action_symbolically():
    a, b = sympy.symbols("a b")
    s = sympy.symbols("s0 s1")
    t = sympy.symbols("t0 t1")
    for law in (LAW1, LAW2, MonomialLaw((0, 1), ((2, 1), (0, 3)))):
        twice = law.apply(law.apply((a, b), s), t)
        once = law.apply((a, b), [x * y for x, y in zip(s, t)])
        assert all(sympy.expand(u - v) == 0 for u, v in zip(twice, once))


def test_report_contents():
    rep = example_ex1_report()
    assert rep["closure_facts"] == {
        "law1: cl(delta) contains every stratum": True,
        "law2: cl(delta') contains gamma'": False,
    }
    assert rep["induced_map"]["on_classes"]["gamma"] == "alpha'"
