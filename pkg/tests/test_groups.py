import pytest

from flasque.groups import (DuplicateLabel, MalformedTable, NoIdentity, NoInverse, NotAssociative, Subgroup,
                            cyclic_group, klein_four, make_group, parse_subgroup, subgroups, symmetric_group)


@pytest.mark.parametrize("group, count", [(klein_four(), 5), (cyclic_group(6), 4), (cyclic_group(8), 4),
                                          (symmetric_group(3), 6), (symmetric_group(4), 30)])
def test_subgroup_counts(group, count):
    subs = subgroups(group)
    assert len(subs) == count
    assert len({s.members for s in subs}) == count
    assert all(group.order % s.order == 0 for s in subs)


def test_klein_four_structure():
    g = klein_four()
    assert g.elements == ("1", "σ", "τ", "στ")
    assert g.is_abelian()
    assert all(g.element_order(i) == 2 for i in range(1, 4))
    assert g.mul(g.index("σ"), g.index("τ")) == g.index("στ")
    assert [s.name() for s in subgroups(g)] == ["1", "<σ>", "<τ>", "<στ>", "G"]


def test_symmetric_group_is_nonabelian():
    s3 = symmetric_group(3)
    assert not s3.is_abelian()
    assert sorted(s3.element_order(i) for i in range(6)) == [1, 2, 2, 2, 3, 3]


def test_parse_subgroup():
    g = klein_four()
    assert parse_subgroup(g, "G") == g.whole
    assert parse_subgroup(g, "1") == g.trivial
    assert parse_subgroup(g, "σ,τ") == g.whole
    assert parse_subgroup(g, "<στ>").order == 2
    with pytest.raises(KeyError):
        parse_subgroup(g, "ρ")


def test_cosets_partition():
    g = symmetric_group(3)
    for h in subgroups(g):
        cosets = h.left_cosets()
        assert len(cosets) == h.index
        assert sorted(x for c in cosets for x in c) == list(range(6))


def test_subgroup_as_group():
    g = symmetric_group(3)
    h = max((s for s in subgroups(g) if s.order == 3), key=lambda s: s.members)
    hg = h.as_group()
    assert hg.order == 3 and hg.is_abelian()


@pytest.mark.parametrize("labels, table, exc", [
    (["a", "a"], [[0, 1], [1, 0]], DuplicateLabel),
    (["a", "b"], [[0, 1]], MalformedTable),
    (["a", "b"], [[0, 2], [1, 0]], MalformedTable),
    (["a", "b"], [[1, 1], [1, 1]], NoIdentity),
    (["e", "a", "b"], [[0, 1, 2], [1, 0, 0], [2, 0, 0]], NotAssociative),
    (["e", "a"], [[0, 1], [1, 1]], NoInverse),
    ([], [], MalformedTable),
])
def test_bad_tables(labels, table, exc):
    with pytest.raises(exc):
        make_group(labels, table)


def test_subgroup_must_be_closed():
    g = klein_four()
    with pytest.raises(ValueError):
        Subgroup(g, (0, 1, 2))
