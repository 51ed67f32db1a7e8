import pytest

from stratos.abgrp import AbHom, FgAbGroup, Subgroup, cyclic_subgroup_of_z, image_subgroup, subgroup_leq
from stratos.errors import InputError

Z = FgAbGroup(1)


def test_multiples_of_four_inside_multiples_of_two():
    assert subgroup_leq(cyclic_subgroup_of_z(4), cyclic_subgroup_of_z(2))
    assert not subgroup_leq(cyclic_subgroup_of_z(2), cyclic_subgroup_of_z(4))


def test_trivial_subgroup_is_least():
    g = FgAbGroup(2, (2, 6))
    t = Subgroup.trivial(g)
    assert t <= Subgroup.generated_by(g, [[0, 1, 1, 0]])
    assert t <= Subgroup.whole(g)
    assert t.is_trivial


def test_sign_and_generator_order_do_not_matter():
    assert cyclic_subgroup_of_z(-6) == cyclic_subgroup_of_z(6)
    a = Subgroup.generated_by(FgAbGroup(2), [[2, 0], [0, 3]])
    b = Subgroup.generated_by(FgAbGroup(2), [[2, 3], [0, 3], [4, 0]])
    assert a == b


def test_torsion_relations_are_respected():
    g = FgAbGroup(0, (4,))
    assert Subgroup.generated_by(g, [[2]]) == Subgroup.generated_by(g, [[6]])
    assert Subgroup.generated_by(g, [[3]]) == Subgroup.whole(g)
    assert Subgroup.generated_by(g, [[2]]).as_group == FgAbGroup(0, (2,))


def test_index_and_description():
    assert cyclic_subgroup_of_z(5).index() == 5
    assert cyclic_subgroup_of_z(5).describe() == "5Z"
    assert Subgroup.generated_by(FgAbGroup(2), [[1, 0]]).index() is None
    assert Subgroup.generated_by(FgAbGroup(0, (2, 4)), [[1, 0], [0, 1]]).describe() == "Z/2 + Z/4"


def test_ambient_mismatch():
    with pytest.raises(InputError):
        subgroup_leq(cyclic_subgroup_of_z(2), Subgroup.trivial(FgAbGroup(2)))


def test_bad_invariant_factors():
    with pytest.raises(InputError):
        FgAbGroup(0, (4, 6))
    with pytest.raises(InputError):
        FgAbGroup(0, (1,))


def test_homomorphism_images():
    times2 = AbHom(Z, Z, ((2,),))
    assert image_subgroup(times2) == cyclic_subgroup_of_z(2)
    assert image_subgroup(AbHom.zero(Z, Z)).is_trivial
    assert times2.after(times2).image() == cyclic_subgroup_of_z(4)
    assert times2.image_of(cyclic_subgroup_of_z(3)) == cyclic_subgroup_of_z(6)


def test_homomorphism_must_respect_torsion():
    with pytest.raises(InputError):
        AbHom(FgAbGroup(0, (2,)), Z, ((1,),))
    AbHom(FgAbGroup(0, (2,)), FgAbGroup(0, (4,)), ((2,),))


@pytest.mark.parametrize("a", range(-12, 13))
def test_divisibility_small(a):
    for b in range(-12, 13):
        if b == 0:
            expected = a == 0
        else:
            expected = a % b == 0
        assert subgroup_leq(cyclic_subgroup_of_z(a), cyclic_subgroup_of_z(b)) == expected
