"""A finitely generated fragment of L^× for a ramified biquadratic local extension L/K.

K has odd residue characteristic, contains i = √−1, π is a uniformizer and u a
non-square unit; L = K(√π, √u) with σ fixing √π and τ fixing √u.  Written
additively, the fragment has generators

    g1 = √π,  g2 = √u,  g3 = i       with 4·g3 = 0,

so π = 2·g1, u = 2·g2 and −1 = 2·g3.  The normalized valuation of L is
w(e1, e2, m) = e1, and the valuation of K is v = w / 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import product
from math import gcd

from .gmodules import (FgAbGModule, FixedPoints, ModuleMap, direct_sum_modules, fixed_points, solve_preimage,
                       tensor_lattice_map, tensor_lattice_module, trivial_module)
from .groups import klein_four
from .intmat import IntMatrix, Span, hstack, kernel
from .klein import KleinData, build_T_star
from .lattices import dual, fixed_sublattice
from .report import CheckReport

NAMES = ("√π", "√u", "i")


class NotOnTorus(ValueError):
    """A pair (t, x) violating one of the torus equations; ``equation`` names it."""

    def __init__(self, equation: str, lhs, rhs):
        super().__init__(f"{equation}: {list(lhs)} != {list(rhs)} (mod 4 in the last coordinate)")
        self.equation = equation


@cache
def fragment() -> FgAbGModule:
    g = klein_four()
    ident = IntMatrix.identity(3)
    sigma = IntMatrix([[1, 0, 0], [0, 1, 0], [0, 2, 1]], 3)  # √u -> −√u
    tau = IntMatrix([[1, 0, 0], [0, 1, 0], [2, 0, 1]], 3)  # √π -> −√π
    action = [ident, sigma, tau, sigma @ tau]
    return FgAbGModule(g, 3, IntMatrix([[0], [0], [4]], 1), action, names=NAMES)


@cache
def unit_fragment() -> tuple[FgAbGModule, ModuleMap]:
    """The valuation-zero part ⟨√u, i⟩ and its inclusion into the fragment."""
    a = fragment()
    ident = IntMatrix.identity(2)
    sigma = IntMatrix([[1, 0], [2, 1]], 2)
    u = FgAbGModule(a.group, 2, IntMatrix([[0], [4]], 1), [ident, sigma, ident, sigma], names=NAMES[1:])
    return u, ModuleMap(u, a, IntMatrix([[0, 0], [1, 0], [0, 1]], 2))


def valuation(v) -> int:
    """Normalized valuation w of L."""
    return v[0]


def valuation_map() -> ModuleMap:
    """w as a module map to Z with trivial action."""
    a = fragment()
    return ModuleMap(a, trivial_module(a.group), IntMatrix([[1, 0, 0]], 3))


@cache
def k_fragment() -> FixedPoints:
    """The K^×-fragment: Galois-fixed elements of the fragment."""
    return fixed_points(fragment())


@dataclass(frozen=True)
class LocalTorusPoint:
    t: tuple[int, ...]
    x: tuple[int, ...]


def torus_equations(t, x) -> list[tuple[str, tuple[int, ...], tuple[int, ...]]]:
    a = fragment()
    g = a.group
    s, tau = g.index("σ"), g.index("τ")

    def add(*vs):
        return tuple(map(sum, zip(*vs)))

    def neg(v):
        return tuple(-c for c in v)

    return [
        ("σ(t) − t = x + τ(x)", add(a.act(s, t), neg(t)), add(x, a.act(tau, x))),
        ("τ(t) − t = x + σ(x)", add(a.act(tau, t), neg(t)), add(x, a.act(s, x))),
        ("N_G(x) = 0", a.norm(x), (0, 0, 0)),
    ]


def torus_point(t, x) -> LocalTorusPoint:
    a = fragment()
    t, x = tuple(t), tuple(x)
    for name, lhs, rhs in torus_equations(t, x):
        if not a.equal(lhs, rhs):
            raise NotOnTorus(name, lhs, rhs)
    return LocalTorusPoint(t, x)


def is_torus_point(t, x) -> bool:
    try:
        torus_point(t, x)
    except NotOnTorus:
        return False
    return True


# -- the same points seen inside T_* ⊗ fragment -------------------------------------------

@cache
def tensor_data():
    """(T_* ⊗ A, (Z[G] ⊕ I_G) ⊗ A, embedding map, span of the embedded image plus relations)."""
    d = build_T_star()
    a = fragment()
    emb = tensor_lattice_map(d.embed, a)
    big = emb.codomain
    image = Span(hstack([emb.matrix, big.relations]))
    return emb.domain, big, emb, image


def embedded(t, x) -> tuple[int, ...]:
    """Σ_g e_g ⊗ g·t  ⊕  Σ_{g≠1} (g−1) ⊗ g·x  in (Z[G] ⊕ I_G) ⊗ A."""
    a = fragment()
    g = a.group
    out: list[int] = []
    for h in range(g.order):
        out += a.act(h, t)
    for h in range(g.order):
        if h != g.identity:
            out += a.act(h, x)
    return tuple(out)


def tensor_membership(t, x) -> bool:
    """Whether (t, x) gives a Galois-fixed element of T_* ⊗ A, decided in the tensor module."""
    _, big, _, image = tensor_data()
    e = embedded(t, x)
    return big.is_fixed(e) and tuple(e) in image


def tensor_coordinates(t, x) -> tuple[int, ...] | None:
    """T_* ⊗ A coordinates of a torus point, or None."""
    _, _, emb, _ = tensor_data()
    pre = solve_preimage(emb, embedded(t, x))
    return None if pre is None else pre.coords


def first_coordinate(xi) -> tuple[int, ...]:
    """The L^×-component t of an element of T_* ⊗ A (the e_1-slot of its Z[G] part)."""
    _, _, emb, _ = tensor_data()
    return emb.matrix.apply(xi)[:3]


# -- P(K) -> T(K) and its image ---------------------------------------------------------

def rt_image_map() -> ModuleMap:
    """K^× ⊕ L^× ⊕ L^× -> L^×, (α, β, γ) -> α + (1+τ)σβ + (1+σ)τγ."""
    a = fragment()
    kf = k_fragment()
    g = a.group
    s, t, st = (a.action[g.index(x)] for x in ("σ", "τ", "στ"))
    dom = direct_sum_modules(kf.as_module(), a, a)
    return ModuleMap(dom, a, hstack([kf.lifts, s + st, t + st]))


@cache
def resolution_on_points(data: KleinData | None = None) -> ModuleMap:
    """(P_* ⊗ A)^G -> T_* ⊗ A induced by the explicit resolution."""
    d = data or build_T_star()
    a = fragment()
    surj = tensor_lattice_map(d.resolution.surj, a)
    fp = fixed_points(surj.domain)
    return ModuleMap(fp.as_module(), surj.codomain, surj.matrix @ fp.lifts)


@cache
def compact_on_points(data: KleinData | None = None) -> ModuleMap:
    """(T_* ⊗ U)^G -> T_* ⊗ A, the maximal compact subgroup T(O_K) in the fragment."""
    d = data or build_T_star()
    u, incl = unit_fragment()
    tu = tensor_lattice_module(d.Tstar, u)
    fp = fixed_points(tu)
    mat = IntMatrix.identity(d.Tstar.rank).kron(incl.matrix) @ fp.lifts
    return ModuleMap(fp.as_module(), tensor_lattice_module(d.Tstar, fragment()), mat)


def valuation_subgroup(values) -> int:
    """Nonnegative generator of the subgroup of Z generated by the values."""
    out = 0
    for v in values:
        out = gcd(out, v)
    return out


def witness_point() -> LocalTorusPoint:
    """(√(uπ), i)."""
    return torus_point((1, 1, 0), (0, 0, 1))


def verify_local_counterexample() -> CheckReport:
    rep = CheckReport()
    p = witness_point()
    rep.add("local_point_on_torus", is_torus_point(p.t, p.x) and tensor_membership(p.t, p.x),
            "(√(uπ), i) satisfies the torus equations and is a fixed element of T_* ⊗ L^×",
            {"t": list(p.t), "x": list(p.x)})
    rep.add("local_point_valuation", valuation(p.t) == 1, "w(√(uπ)) = 1", {"w": valuation(p.t)})

    rt = rt_image_map()
    gens = [valuation(c) for c in rt.matrix.columns()]
    gen_rt = valuation_subgroup(gens)
    res_pts = resolution_on_points()
    gens_full = [valuation(first_coordinate(c)) for c in res_pts.matrix.columns()]
    agree = _rt_formula_matches(rt, res_pts)
    rep.add("rt_valuations_even", gen_rt == 2 and valuation_subgroup(gens_full) == 2 and agree,
            "valuations of first coordinates of RT(K) form exactly 2Z (even, with 2 attained)",
            {"generator_valuations": gens, "subgroup_generator": gen_rt, "formula_matches_resolution": agree})

    comp = compact_on_points()
    comp_vals = [valuation(first_coordinate(c)) for c in comp.matrix.columns()]
    rep.add("compact_valuation_zero", all(v == 0 for v in comp_vals),
            "points of T(O_K) have first coordinate of valuation 0", {"valuations": comp_vals})

    xi = tensor_coordinates(p.t, p.x)
    both = ModuleMap(direct_sum_modules(res_pts.domain, comp.domain), res_pts.codomain,
                     hstack([res_pts.matrix, comp.matrix]))
    pre = solve_preimage(both, xi)
    rep.add("local_counterexample", pre is None and valuation(p.t) % 2 == 1,
            "T(K) ≠ T(O_K)·RT(K): (√(uπ), i) has no preimage in (P_* ⊗ L^×)^G ⊕ T(O_K)",
            {"verdict": "T(K) ≠ T(O_K)·RT(K)" if pre is None else "preimage found"})
    return rep


def _rt_formula_matches(rt: ModuleMap, res_pts: ModuleMap) -> bool:
    """The closed formula and the resolution route have the same image in L^×."""
    a = fragment()
    img_formula = Span(hstack([rt.matrix, a.relations]))
    cols = [first_coordinate(c) for c in res_pts.matrix.columns()]
    img_res = Span(hstack([IntMatrix.from_columns(cols, 3), a.relations]))
    return img_formula == img_res


# -- φ = e ψ ---------------------------------------------------------------------------

def phi_psi(xi, data: KleinData | None = None) -> tuple[list[int], list[int]]:
    """φ(ξ) and ψ(ξ) on the basis of (T^*)^G, for ξ in (T_* ⊗ A)^G.

    φ: apply id ⊗ w to land in T_*^G and pair with each invariant character.
    ψ: apply each invariant character to get a K^× element, then v = w / 2.
    """
    d = data or build_T_star()
    r = d.Tstar.rank
    w = IntMatrix.identity(r).kron(IntMatrix([[1, 0, 0]], 3))
    cocharacter = w.apply(xi)
    chars, _ = fixed_sublattice(dual(d.Tstar))
    phi, psi = [], []
    a = fragment()
    for chi in chars.columns():
        phi.append(sum(c * y for c, y in zip(chi, cocharacter)))
        pointwise = IntMatrix([list(chi)], r).kron(IntMatrix.identity(3)).apply(xi)
        if not a.is_fixed(pointwise):
            raise AssertionError("an invariant character sent a fixed point outside K^×")
        val = valuation(pointwise)
        if val % 2:
            raise AssertionError("a K^× element with odd L-valuation")
        psi.append(val // 2)
    return phi, psi


def verify_phi_eq_e_psi() -> CheckReport:
    d = build_T_star()
    rep = CheckReport()
    tens = tensor_lattice_module(d.Tstar, fragment())
    fp = fixed_points(tens)
    values = [phi_psi(c, d) for c in fp.lifts.columns()]
    ok = all(p == [2 * q for q in s] for p, s in values)
    wp = witness_point()
    p0, s0 = phi_psi(tensor_coordinates(wp.t, wp.x), d)
    rep.add("phi_eq_2psi", ok and p0 == [2 * q for q in s0],
            "φ = 2ψ on every generator of (T_* ⊗ L^×)^G and on (√(uπ), i)",
            {"generators": [{"phi": p, "psi": s} for p, s in values], "witness": {"phi": p0, "psi": s0}})

    # ker ψ versus T(O_K), both as subgroups of the fixed-point group in lift coordinates
    psi_rows = IntMatrix([s for _, s in values], len(values[0][1])).T if values else IntMatrix.zeros(0, 0)
    ker = kernel(psi_rows)
    ker_span = Span(hstack([ker, fp.relations], fp.n_gens))
    comp = compact_on_points(d)
    comp_coords = [fp.coordinates(c) for c in comp.matrix.columns()]
    comp_span = Span(hstack([IntMatrix.from_columns(comp_coords, fp.n_gens), fp.relations], fp.n_gens))
    zero_on_compact = all(phi_psi(c, d)[1] == [0] * len(values[0][1]) for c in comp.matrix.columns())
    rep.add("psi_kernel_is_compact", ker_span == comp_span and zero_on_compact,
            "the kernel of ψ on the fixed-point group is exactly the image of T(O_K)",
            {"kernel_rank": ker_span.rank, "compact_rank": comp_span.rank})

    v0 = [tuple(c) for c in fp.lifts.columns() if valuation(first_coordinate(c)) == 0]
    rep.add("valuation_zero_points", all(phi_psi(c, d) == ([0], [0]) for c in v0),
            "both sides vanish on fixed points whose first coordinate has valuation 0",
            {"count": len(v0)})
    return rep


def sweep(bound: int = 2):
    """All fragment elements with |e1|, |e2| <= bound and m in 0..3."""
    rng = range(-bound, bound + 1)
    return [(e1, e2, m) for e1, e2, m in product(rng, rng, range(4))]


def verify_all() -> CheckReport:
    rep = verify_local_counterexample()
    rep.extend(verify_phi_eq_e_psi())
    return rep
