import pytest

from flasque import klein_four
from flasque.gmodules import fixed_points
from flasque.ideles import (NotFixed, OddResidueDegree, PlaceError, PlaceOrbit, PlaceSystem, deg_L_F, deg_T,
                            extra_places, global_preset, image_data, invariant_pairing, lattice_zoo, tensor_module,
                            verify_all, verify_global_counterexample, witness_idele)
from flasque.localfield import compact_on_points, fragment

G = klein_four()


@pytest.fixture(scope="module")
def system():
    return global_preset()


def test_preset_layout(system):
    assert system.module.n_gens == 16
    fw = {o.name: o.f_w for o in system.orbits}
    assert fw == {"λ=0": 2, "λ=∞": 2, "deg1_square": 2, "deg1_nonsquare": 2, "deg2_square": 2,
                  "deg2_nonsquare": 4}
    names = [p[0] for p in system.places]
    assert names[:2] == ["λ=0", "λ=∞"]
    assert "deg1_square[1]" in names and "deg1_square[τ]" in names
    assert len(names) == 2 + 2 + 2 + 4 + 2


def test_degree_is_invariant_homomorphism(system):
    a = system.module
    row = system.degree_row
    deg = lambda v: sum(x * y for x, y in zip(row, v))  # noqa: E731
    for i in range(a.n_gens):
        e = [0] * a.n_gens
        e[i] = 1
        for g in range(4):
            assert deg(a.act(g, e)) == deg(e)
    for rel in a.relations.columns():
        assert deg(rel) == 0
    x = system.idele({"λ=0": (1, 0, 0), "deg2_nonsquare[σ]": (3,)})
    y = system.idele({"deg1_square[τ]": (-2,)})
    assert deg_L_F(x) == 2 + 12 and deg_L_F(y) == -4
    assert x.support() == {"λ=0": (1, 0, 0), "deg2_nonsquare[σ]": (3,)}


def test_idele_errors(system):
    with pytest.raises(PlaceError):
        system.idele({"nowhere": (1,)})
    with pytest.raises(PlaceError):
        system.idele({"λ=0": (1,)})
    with pytest.raises(TypeError):
        deg_L_F((1, 2))


def test_deg_k_of_diagonal_ideles(system):
    fp = fixed_points(system.module)
    for c in fp.lifts.columns():
        assert sum(a * b for a, b in zip(system.degree_row, c)) == 4 * system.deg_K(c)
    with pytest.raises(NotFixed):
        system.deg_K((1,) + (0,) * 15)


def test_deg_t_vanishes_on_valuation_zero_points(system, kd):
    comp = compact_on_points()
    total = system.module.n_gens
    for col in comp.matrix.columns():
        xi = [0] * (kd.Tstar.rank * total)
        for i in range(kd.Tstar.rank):
            xi[i * total: i * total + 3] = col[3 * i: 3 * i + 3]
        assert deg_T(system, kd.Tstar, xi) == (0, 0, 0, 0)


def test_deg_t_rejects_non_fixed(system, kd):
    n = tensor_module(system, kd.Tstar).n_gens
    with pytest.raises(NotFixed):
        deg_T(system, kd.Tstar, (1,) + (0,) * (n - 1))


def test_witness_at_both_ramified_places(system, kd):
    for place in ("λ=0", "λ=∞"):
        xi = witness_idele(system, kd, place)
        assert tensor_module(system, kd.Tstar).is_fixed(xi)
    for bad in ("deg2_square[1]", "deg2_square"):
        with pytest.raises(PlaceError):
            witness_idele(system, kd, bad)


def test_image_data(system, kd):
    im = image_data(system, kd)
    assert im.p_route_generic == 4
    assert im.p_route_blocks == (4, 4, 4)
    assert im.t_route == 2 and im.witness_value == 2


def test_enlarged_preset_keeps_verdict(kd):
    big = global_preset(extra_places())
    rep = verify_global_counterexample(big, kd)
    assert rep["prop_6_1_a"].ok and rep["prop_6_1_verdict"].ok
    assert image_data(big, kd).p_route_generic % 4 == 0


def test_invariant_pairing_cokernels(kd):
    got = {name: str(invariant_pairing(m)[1]) for name, m in lattice_zoo(kd).items()}
    assert got == {"Z": "0", "Z[G]": "Z/4", "I_G": "0", "T_*": "Z/2"}


@pytest.mark.parametrize("orbit, exc", [
    (PlaceOrbit("odd", G.trivial, 1, 1), OddResidueDegree),
    (PlaceOrbit("bad_e", G.trivial, 2, 2), PlaceError),
    (PlaceOrbit("ramified_without_local", G.whole, 2, 2), PlaceError),
    (PlaceOrbit("λ=0", G.whole, 2, 1, fragment(), (1, 0, 0)), PlaceError),
    (PlaceOrbit("bad_valuation", G.whole, 2, 1, fragment(), (1, 0)), PlaceError),
])
def test_invalid_orbits(orbit, exc):
    with pytest.raises(exc):
        global_preset(extra=(orbit,))


def test_odd_degrees_allowed_when_not_required():
    s = PlaceSystem(G, [PlaceOrbit("odd", G.trivial, 1, 1)])
    assert s.degree_row == (1, 1, 1, 1)


def test_suite_passes():
    rep = verify_all()
    assert rep.passed, rep.to_text()
    assert len(rep) == 10
