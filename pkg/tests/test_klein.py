import pytest

from flasque import IntMatrix, LatticeMap, exactness_check, h1, is_coflasque
from flasque.klein import (LiftNotLanding, _ig_cover, _lift_from_vectors, build_explicit_resolution, composed_formula,
                           klein_subgroups, long_exact_sequence, explicit_lift_vectors, right_mult_matrix,
                           verify_all, zg_element)
from flasque.lattices import CompositionMismatch


def test_zg_element_parsing(kd):
    g = kd.G
    assert zg_element(g, "σ+στ") == (0, 1, 0, 1)
    assert zg_element(g, "1-σ") == (1, -1, 0, 0)
    assert zg_element(g, "1−τ") == (1, 0, -1, 0)
    assert zg_element(g, {"σ": 2, "1": -1}) == (-1, 2, 0, 0)


def test_right_multiplication_commutes_with_action(kd):
    r = right_mult_matrix(kd.G, zg_element(kd.G, "1-σ"))
    for a in kd.ZG.action:
        assert a @ r == r @ a
    assert r.apply(zg_element(kd.G, "1+σ")) == (0, 0, 0, 0)


def test_tstar_is_kernel_of_phi(kd):
    assert kd.Tstar.rank == 4
    assert (kd.phi.matrix @ kd.embed.matrix).is_zero()
    assert exactness_check(kd.embed, kd.phi)
    # T_* is not coflasque: it fails exactly where I_G does
    assert not is_coflasque(kd.Tstar)
    assert str(h1(kd.G.whole, kd.Tstar)) != "0"


def test_first_projection_kernel_is_explicit(kd):
    ker = kd.first_projection().kernel_basis()
    assert ker.ncols == 1
    v = kd.embed.matrix.apply(ker.col(0))
    assert v[:4] == (0, 0, 0, 0)
    z = kd.ig_incl.matrix.apply(v[4:])
    one_s = right_mult_matrix(kd.G, zg_element(kd.G, "1-σ"))
    expected = one_s.apply(zg_element(kd.G, "1-τ"))
    assert z in (expected, tuple(-c for c in expected))


def test_norm_generator_sequence(kd):
    a = kd.norm_inclusion()
    b = kd.second_projection()
    assert a.is_injective() and b.is_surjective() and exactness_check(a, b)


def test_long_sequence_literal_final_map_is_not_a_complex(kd):
    seq = long_exact_sequence(kd)
    _, f1, f2 = seq.maps
    assert exactness_check(f1, f2)
    literal = LatticeMap(f2.domain, f2.codomain, seq.printed_final, check=False)
    with pytest.raises(CompositionMismatch):
        exactness_check(f1, literal)


def test_lift_vectors_and_formula(kd):
    v1, v2 = explicit_lift_vectors(kd)
    for v in (v1, v2):
        assert kd.to_tstar(v) is not None
    assert len(composed_formula(kd)) == 9
    assert composed_formula(kd)[0] == (1, 1, 1, 1)


def test_bad_lift_rejected(kd):
    base = _ig_cover(kd)
    v1, v2 = explicit_lift_vectors(kd)
    bad = tuple(a + b for a, b in zip(v1, (1, 0, 0, 0, 0, 0, 0)))
    with pytest.raises(LiftNotLanding):
        _lift_from_vectors(kd, base.P, bad, v2)


def test_shifted_resolutions_are_coflasque(kd):
    for shift in ((1, 0), (0, -1), (2, 2)):
        res = build_explicit_resolution(kd, shift)
        assert res.F.rank == 5 and is_coflasque(res.F)
        assert kd.first_projection()(res.surj.matrix.col(0)) == kd.norm_element


def test_ig_cover(kd):
    base = _ig_cover(kd)
    assert (base.P.rank, base.F.rank) == (8, 5)
    assert base.surj.is_surjective()


def test_suite_only_fails_first_projection(kd):
    rep = verify_all(kd)
    assert [c.id for c in rep.failures()] == ["lemma_4_1_i"]
    assert rep["lemma_4_1_i"].witness["kernel_rank"] == 1
    assert len(klein_subgroups()) == 5
    assert IntMatrix.identity(1) == IntMatrix([[1]], 1)
