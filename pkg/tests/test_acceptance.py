"""Acceptance criteria 1-10.  The terminal summary prints one PASS/FAIL line per criterion."""
import dataclasses

import pytest

from flasque import (IntMatrix, LatticeMap, augmentation_kernel, coflasque_resolution, compare_resolutions, dual,
                     exactness_check, group_ring, h1, is_coflasque, tate, trivial_lattice)
from flasque.cohomology import h1_augmentation_ideal_via_sequence
from flasque.ideles import (OddResidueDegree, PlaceOrbit, global_preset, invariant_pairing, lattice_zoo,
                            verify_all as verify_global, verify_degree_compatibility)
from flasque.klein import (right_mult_matrix, verify_lift_ambiguity, verify_long_exact_sequence,
                           verify_explicit_resolution, verify_tstar_structure, zg_element)
from flasque.lattices import permutation_lattice
from flasque.localfield import verify_all as verify_local

crit = pytest.mark.criterion


@pytest.fixture(scope="module")
def local_report():
    return verify_local()


@pytest.fixture(scope="module")
def global_report():
    return verify_global()


# 1 -----------------------------------------------------------------------------------

@crit(1)
def test_tstar_rank_is_four(kd):
    assert kd.Tstar.rank == 4
    assert verify_tstar_structure(kd)["tstar_rank"].ok


@crit(1)
def test_norm_sequence_exact(kd):
    assert verify_tstar_structure(kd)["lemma_4_1_ii"].ok


@crit(1)
@pytest.mark.xfail(strict=True, reason="T_* -> Z[G] has kernel Z·(0, (1-σ)(1-τ)); see notes/decisions.md")
def test_first_projection_injective(kd):
    assert verify_tstar_structure(kd)["lemma_4_1_i"].ok


# 2 -----------------------------------------------------------------------------------

@crit(2)
def test_long_sequence(kd):
    rep = verify_long_exact_sequence(kd)
    for cid in ("les_exact_at_tstar", "les_exact_at_source", "les_exact_at_ab", "les_exact_at_z"):
        assert rep[cid].ok, cid
    assert rep["les_ranks"].witness["ranks"] == [4, 7, 4, 1]


# 3 -----------------------------------------------------------------------------------

@crit(3)
def test_explicit_resolution(kd):
    rep = verify_explicit_resolution(kd)
    assert rep.passed, rep.to_text()
    res = kd.resolution
    assert (res.P.rank, res.F.rank) == (9, 5)
    assert is_coflasque(res.F)


@crit(3)
def test_composed_formula_on_basis(kd):
    g = kd.G
    b_op = right_mult_matrix(g, zg_element(g, "σ+στ"))
    c_op = right_mult_matrix(g, zg_element(g, "τ+στ"))
    comp = kd.first_projection().matrix @ kd.resolution.surj.matrix
    for i, col in enumerate(IntMatrix.identity(9).columns()):
        a, b, c = col[0], col[1:5], col[5:9]
        expect = tuple(a * n + x + y for n, x, y in zip(kd.norm_element, b_op.apply(b), c_op.apply(c)))
        assert comp.apply(col) == expect, i


@crit(3)
@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
@pytest.mark.parametrize("m", [-2, -1, 0, 1, 2])
def test_lift_ambiguity(kd, n, m):
    assert verify_lift_ambiguity(n, m, kd).passed


# 4 -----------------------------------------------------------------------------------

@crit(4)
def test_local_counterexample(local_report):
    assert local_report["local_point_on_torus"].ok
    assert local_report["local_point_valuation"].witness == {"w": 1}
    rt = local_report["rt_valuations_even"]
    assert rt.ok and rt.witness["subgroup_generator"] == 2
    assert local_report["compact_valuation_zero"].ok
    c = local_report["local_counterexample"]
    assert c.ok and c.witness["verdict"] == "T(K) ≠ T(O_K)·RT(K)"


# 5 -----------------------------------------------------------------------------------

@crit(5)
def test_phi_is_twice_psi(local_report):
    rep = local_report
    assert rep["phi_eq_2psi"].ok
    for gen in rep["phi_eq_2psi"].witness["generators"]:
        assert gen["phi"] == [2 * x for x in gen["psi"]]
    assert rep["psi_kernel_is_compact"].ok
    assert rep["valuation_zero_points"].ok


# 6 -----------------------------------------------------------------------------------

@crit(6)
def test_degree_obstruction(global_report):
    a = global_report["prop_6_1_a"]
    assert a.ok and a.witness["generator"] % 4 == 0
    b = global_report["prop_6_1_b"]
    assert b.ok and b.witness["value"] == 2
    v = global_report["prop_6_1_verdict"]
    assert v.ok and v.witness["verdict"] == "strict containment witnessed"


# 7 -----------------------------------------------------------------------------------

@crit(7)
def test_h1_augmentation_ideal_two_routes(G):
    ig, _ = augmentation_kernel(G)
    assert str(h1(G.whole, ig)) == "Z/4"
    assert str(h1_augmentation_ideal_via_sequence(G.whole)) == "Z/4"


@crit(7)
def test_h1_permutation_modules_vanish(subs):
    for h in subs:
        for k in subs:
            assert h1(h, permutation_lattice(h.parent, k)).is_trivial(), (h.name, k.name)


@crit(7)
def test_exponent_and_duality(kd, subs):
    ig, _ = augmentation_kernel(kd.G)
    zoo = {"Z": trivial_lattice(kd.G), "Z[G]": group_ring(kd.G), "I_G": ig, "T_*": kd.Tstar,
           "F_*": kd.resolution.F}
    for name, m in zoo.items():
        md = dual(m)
        for h in subs:
            for deg in (-1, 0, 1):
                c = tate(deg, h, m)
                assert c.is_finite() and h.order % c.exponent == 0, (name, h.name, deg)
            assert tate(-1, h, m).order == tate(1, h, md).order, (name, h.name)


# 8 -----------------------------------------------------------------------------------

@crit(8)
def test_invariant_pairing(kd):
    zoo = lattice_zoo(kd)
    for name, m in zoo.items():
        _, coker = invariant_pairing(m)
        assert coker.is_finite(), name
    assert invariant_pairing(zoo["Z[G]"])[1].order == 4


@crit(8)
def test_degree_routes_agree(kd):
    assert verify_degree_compatibility(global_preset(), kd)["lemma_3_2"].ok


# 9 -----------------------------------------------------------------------------------

@crit(9)
@pytest.mark.parametrize("name", ["Z", "I_G", "T_*", "dual(I_G)"])
def test_generic_builder(kd, name):
    ig, _ = augmentation_kernel(kd.G)
    m = {"Z": trivial_lattice(kd.G), "I_G": ig, "T_*": kd.Tstar, "dual(I_G)": dual(ig)}[name]
    res = coflasque_resolution(m).verify()
    assert exactness_check(res.inj, res.surj) and res.surj.is_surjective() and res.inj.is_injective()
    assert is_coflasque(res.F) and is_coflasque(res.P)


@crit(9)
def test_generic_matches_explicit(kd):
    assert compare_resolutions(coflasque_resolution(kd.Tstar), kd.resolution).passes


# 10 ----------------------------------------------------------------------------------

@crit(10)
def test_corrupted_embedding_fails(kd):
    m = kd.embed.matrix.tolist()
    for r in range(4):
        m[r][0] = 0
    bad = dataclasses.replace(kd, embed=LatticeMap(kd.Tstar, kd.source, IntMatrix(m, kd.Tstar.rank), check=False))
    chk = verify_tstar_structure(bad)["lemma_4_1_i"]
    assert not chk.ok
    assert chk.witness["kernel_rank"] > verify_tstar_structure(kd)["lemma_4_1_i"].witness["kernel_rank"]


@crit(10)
def test_doubling_sequence_not_exact(G):
    z = trivial_lattice(G)
    double = LatticeMap(z, z, IntMatrix([[2]], 1))
    zero = LatticeMap(z, trivial_lattice(G, 0), IntMatrix([], 1))
    assert not exactness_check(double, zero)


@crit(10)
def test_odd_residue_degree_rejected(G):
    with pytest.raises(OddResidueDegree):
        global_preset(extra=(PlaceOrbit("odd", G.trivial, 1, 1),))
