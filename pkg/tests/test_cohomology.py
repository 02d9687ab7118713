import pytest
from hypothesis import given, settings, strategies as st

from flasque import (augmentation_kernel, cyclic_group, direct_sum, dual, group_ring, h1, is_coflasque, is_flasque,
                     klein_four, subgroups, tate, trivial_lattice)
from flasque.cohomology import AbGroupClass, cohomology_profile, h1_augmentation_ideal_via_sequence
from flasque.lattices import character_lattice, permutation_lattice

from strategies import GROUPS, lattices


def cls(text):
    return AbGroupClass.parse(text)


@pytest.mark.parametrize("name", GROUPS)
def test_trivial_lattice(name):
    g = GROUPS[name]
    z = trivial_lattice(g)
    for h in subgroups(g):
        assert tate(0, h, z) == AbGroupClass.from_cyclic_orders(0, [h.order])
        assert h1(h, z).is_trivial()
        assert tate(-1, h, z).is_trivial()


@pytest.mark.parametrize("name", GROUPS)
def test_group_ring_is_acyclic(name):
    g = GROUPS[name]
    zg = group_ring(g)
    for h in subgroups(g):
        for d in (-1, 0, 1):
            assert tate(d, h, zg).is_trivial()


@pytest.mark.parametrize("name, abel", [("V4", "Z/2 + Z/2"), ("C4", "Z/4"), ("C6", "Z/6"), ("S3", "Z/2")])
def test_augmentation_ideal(name, abel):
    g = GROUPS[name]
    ig, _ = augmentation_kernel(g)
    assert h1(g.whole, ig) == AbGroupClass.from_cyclic_orders(0, [g.order])
    assert h1_augmentation_ideal_via_sequence(g.whole) == h1(g.whole, ig)
    assert tate(0, g.whole, ig).is_trivial()
    assert tate(-1, g.whole, ig) == cls(abel)
    # the dual J_G = Z[G]/Z·N_G: cohomology shifted from that of Z
    jg = dual(ig)
    assert tate(-1, g.whole, jg) == AbGroupClass.from_cyclic_orders(0, [g.order])
    assert tate(1, g.whole, jg) == cls(abel)


def test_sign_character_of_c4():
    g = cyclic_group(4)
    chi = character_lattice(g, [1, -1, 1, -1])
    assert str(h1(g.whole, chi)) == "Z/2"
    assert tate(0, g.whole, chi).is_trivial()


def test_klein_augmentation_ideal_not_coflasque():
    g = klein_four()
    ig, _ = augmentation_kernel(g)
    t = is_coflasque(ig)
    assert not t and t.subgroup == g.whole and str(t.value) == "Z/4"
    assert not is_flasque(ig)
    assert is_flasque(group_ring(g)) and is_coflasque(group_ring(g))


def test_profile_keys():
    g = klein_four()
    prof = cohomology_profile(trivial_lattice(g))
    assert len(prof) == 15
    assert prof[("G", 0)] == cls("Z/4")


def test_abgroup_class_formatting():
    assert str(cls("Z/6 + Z/4 + Z^2")) == "Z^2 + Z/2 + Z/12"
    assert str(AbGroupClass()) == "0"
    assert cls("Z/2") + cls("Z/3") == cls("Z/6")
    with pytest.raises(ValueError):
        AbGroupClass(0, (4, 2))
    with pytest.raises(ValueError):
        tate(2, None, trivial_lattice(klein_four()))


# -- properties on random lattices --------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(lattices(), st.data())
def test_exponent_divides_order_and_duality(m, data):
    h = data.draw(st.sampled_from(subgroups(m.group)))
    for d in (-1, 0, 1):
        c = tate(d, h, m)
        assert c.is_finite() and h.order % c.exponent == 0
    assert tate(-1, h, m).order == tate(1, h, dual(m)).order
    assert tate(0, h, m).order == tate(0, h, dual(m)).order


@settings(max_examples=30, deadline=None)
@given(lattices(), lattices())
def test_additivity(m, n):
    if m.group != n.group:
        n = trivial_lattice(m.group)
    s = direct_sum(m, n)
    for h in subgroups(m.group):
        for d in (-1, 0, 1):
            assert tate(d, h, s) == tate(d, h, m) + tate(d, h, n)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["V4", "C4", "S3"]), st.data())
def test_shapiro_for_permutation_lattices(name, data):
    g = GROUPS[name]
    k = data.draw(st.sampled_from(subgroups(g)))
    p = permutation_lattice(g, k)
    assert tate(0, g.whole, p) == AbGroupClass.from_cyclic_orders(0, [k.order])
    assert h1(g.whole, p).is_trivial()
    assert tate(-1, g.whole, p).is_trivial()
