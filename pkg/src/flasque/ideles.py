"""Finitely supported idele fragments and degree maps for L/K Galois with group G.

A place system lists orbits of places of L.  Each orbit carries its
decomposition group D, ramification index e, the residue degree f_v of the
K-place below over the constant field F, and a local module over D (or just
the value group Z).  Then f_w = f_v·|D|/e and the idele fragment of L is the
direct sum over orbits of the induced modules Z[G] ⊗_{Z[D]} A_w.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .cohomology import AbGroupClass, quotient_class
from .gmodules import (FgAbGModule, direct_sum_modules, fixed_points, induced_module,
                       tensor_lattice_map, tensor_lattice_module, trivial_module)
from .groups import FiniteGroup, Subgroup, klein_four, parse_subgroup
from .intmat import IntMatrix, kernel
from .klein import KleinData, build_T_star
from .lattices import GLattice, augmentation_kernel, dual, fixed_sublattice, group_ring, trivial_lattice
from .localfield import fragment, witness_point, tensor_coordinates
from .report import CheckReport


class PlaceError(ValueError):
    pass


class OddResidueDegree(PlaceError):
    pass


class NotFixed(ValueError):
    pass


@dataclass(frozen=True)
class PlaceOrbit:
    name: str
    decomposition: Subgroup
    e: int
    f_v: int
    local: FgAbGModule | None = None  # None: the value group Z with trivial action
    valuation: tuple[int, ...] = (1,)

    @property
    def f_w(self) -> int:
        return self.f_v * self.decomposition.order // self.e

    def local_module(self) -> FgAbGModule:
        if self.local is None:
            return trivial_module(self.decomposition.as_group())
        return self.local

    def place_names(self) -> list[str]:
        cosets = self.decomposition.left_cosets()
        if len(cosets) == 1:
            return [self.name]
        g = self.decomposition.parent
        return [f"{self.name}[{g.elements[c[0]]}]" for c in cosets]


class PlaceSystem:
    def __init__(self, group: FiniteGroup, orbits, require_even_residue: bool = False):
        self.group = group
        self.orbits = tuple(orbits)
        self.require_even_residue = require_even_residue
        self._validate()

    def _validate(self):
        names = set()
        for o in self.orbits:
            d = o.decomposition
            if d.parent != self.group:
                raise PlaceError(f"{o.name}: decomposition group of a different group")
            if o.e < 1 or d.order % o.e:
                raise PlaceError(f"{o.name}: ramification index {o.e} does not divide |D| = {d.order}")
            if o.f_v < 1:
                raise PlaceError(f"{o.name}: residue degree must be positive")
            if o.local is None and o.e != 1:
                raise PlaceError(f"{o.name}: a value-group-only place must be unramified")
            a = o.local_module()
            if a.group != d.as_group():
                raise PlaceError(f"{o.name}: local module is not over the decomposition group")
            if len(o.valuation) != a.n_gens:
                raise PlaceError(f"{o.name}: valuation has the wrong length")
            row = IntMatrix([list(o.valuation)], a.n_gens)
            if not (row @ a.relations).is_zero():
                raise PlaceError(f"{o.name}: valuation is not defined on the local module")
            ident = IntMatrix.identity(a.n_gens)
            if any(not (row @ (m - ident)).is_zero() for m in a.action):
                raise PlaceError(f"{o.name}: valuation is not invariant under the decomposition group")
            if self.require_even_residue and o.f_w % 2:
                raise OddResidueDegree(f"{o.name}: residue degree f_w = {o.f_w} is odd")
            for n in o.place_names():
                if n in names:
                    raise PlaceError(f"place name {n!r} repeated")
                names.add(n)

    @cached_property
    def module(self) -> FgAbGModule:
        """The idele fragment I_L."""
        parts = [induced_module(o.local_module(), self.group, o.decomposition) for o in self.orbits]
        return direct_sum_modules(*parts)

    @cached_property
    def places(self) -> list[tuple[str, int, int, PlaceOrbit]]:
        """(name, offset, size, orbit) for every place of L, in generator order."""
        out, off = [], 0
        for o in self.orbits:
            n = o.local_module().n_gens
            for name in o.place_names():
                out.append((name, off, n, o))
                off += n
        return out

    @cached_property
    def degree_row(self) -> tuple[int, ...]:
        """deg_{L,F} as a row vector on the generators of I_L."""
        row: list[int] = []
        for _, _, _, o in self.places:
            row += [o.f_w * c for c in o.valuation]
        return tuple(row)

    def idele(self, support: dict[str, tuple[int, ...]]) -> IdeleFragment:
        coords = [0] * self.module.n_gens
        index = {name: (off, n) for name, off, n, _ in self.places}
        for name, v in support.items():
            if name not in index:
                raise PlaceError(f"unknown place {name!r}")
            off, n = index[name]
            if len(v) != n:
                raise PlaceError(f"local element at {name} has length {len(v)}, expected {n}")
            coords[off:off + n] = v
        return IdeleFragment(self, tuple(coords))

    def deg_K(self, zeta) -> int:
        """deg_{K,F} of a G-fixed idele fragment (a K-idele): Σ f_v·v(ζ_v)."""
        if not self.module.is_fixed(zeta):
            raise NotFixed("not a K-idele")
        total = 0
        seen = set()
        for _, off, n, o in self.places:
            if o.name in seen:
                continue
            seen.add(o.name)  # the first place of each orbit sits over the coset of 1
            w = sum(c * x for c, x in zip(o.valuation, zeta[off:off + n]))
            if w % o.e:
                raise AssertionError(f"K-idele component at {o.name} has valuation not divisible by e")
            total += o.f_v * (w // o.e)
        return total


@dataclass(frozen=True)
class IdeleFragment:
    system: PlaceSystem
    coords: tuple[int, ...]

    def support(self) -> dict[str, tuple[int, ...]]:
        return {name: self.coords[off:off + n] for name, off, n, _ in self.system.places
                if any(self.coords[off:off + n])}


def deg_L_F(xi) -> int:
    """Σ_w f_w · w(ξ_w)."""
    if isinstance(xi, IdeleFragment):
        return sum(a * b for a, b in zip(xi.system.degree_row, xi.coords))
    raise TypeError("deg_L_F needs an IdeleFragment")


# -- torus-valued degrees ----------------------------------------------------------------

def tensor_module(system: PlaceSystem, m: GLattice) -> FgAbGModule:
    return tensor_lattice_module(m, system.module)


def deg_T(system: PlaceSystem, m: GLattice, xi) -> tuple[int, ...]:
    """id_M ⊗ deg_{L,F} on a G-fixed element of M ⊗ I_L; the result lies in M^G."""
    tm = tensor_module(system, m)
    if not tm.is_fixed(xi):
        raise NotFixed("element of M ⊗ I_L is not Galois-fixed")
    row = IntMatrix([list(system.degree_row)], system.module.n_gens)
    out = IntMatrix.identity(m.rank).kron(row).apply(xi)
    if any(m.act(g, out) != out for g in range(m.group.order)):
        raise AssertionError("degree of a fixed element is not fixed")
    return out


def invariant_pairing(m: GLattice) -> tuple[IntMatrix, AbGroupClass]:
    """(M°)^G -> (M^G)°, χ -> (x -> χ(x)).

    Returns the matrix of the map (rows index the basis of M^G, columns the
    basis of (M°)^G) and the class of its cokernel.  Raises if not injective.
    """
    b, r = fixed_sublattice(m)
    bd, s = fixed_sublattice(dual(m))
    mat = b.T @ bd if r and s else IntMatrix.zeros(r, s)
    if kernel(mat).ncols:
        raise AssertionError("pairing map on invariants is not injective")
    return mat, quotient_class(IntMatrix.identity(r), mat)


def degree_routes(system: PlaceSystem, xi, data: KleinData | None = None) -> tuple[list[int], list[int]]:
    """For ξ in (T_* ⊗ I_L)^G: (χ(deg_T ξ))_χ and ([L:K]·deg_K(χ(ξ)))_χ over a basis of (T^*)^G."""
    d = data or build_T_star()
    cochar = deg_T(system, d.Tstar, xi)
    chars, _ = fixed_sublattice(dual(d.Tstar))
    n = system.module.n_gens
    left, right = [], []
    for chi in chars.columns():
        left.append(sum(a * b for a, b in zip(chi, cochar)))
        zeta = IntMatrix([list(chi)], d.Tstar.rank).kron(IntMatrix.identity(n)).apply(xi)
        right.append(system.group.order * system.deg_K(zeta))
    return left, right


def verify_degree_compatibility(system: PlaceSystem, data: KleinData | None = None) -> CheckReport:
    d = data or build_T_star()
    rep = CheckReport()
    fp = fixed_points(tensor_module(system, d.Tstar))
    pairs = [degree_routes(system, c, d) for c in fp.lifts.columns()]
    ok = all(a == b for a, b in pairs)
    rep.add("lemma_3_2", ok, "χ ∘ deg_T = [L:K]·deg_K ∘ χ on every generator of (T_* ⊗ I_L)^G",
            {"generators": len(pairs), "values": [a for a, _ in pairs]})
    return rep


# -- the function-field preset ------------------------------------------------------------

def global_preset(extra: tuple[PlaceOrbit, ...] = (), require_even_residue: bool = True) -> PlaceSystem:
    """K = F(λ), L = F'(√λ) with -1 a square in F and F' quadratic over F.

    σ fixes F(√λ) (so acts on F'), τ fixes F'(λ) (so acts on √λ).  The places
    λ = 0 and λ = ∞ are ramified with F' inert and carry the local fragment;
    the other declared places are unramified and carry only valuations.
    """
    g = klein_four()
    frag = fragment()
    sub = lambda s: parse_subgroup(g, s)  # noqa: E731
    orbits = [
        PlaceOrbit("λ=0", g.whole, 2, 1, frag, (1, 0, 0)),
        PlaceOrbit("λ=∞", g.whole, 2, 1, frag, (1, 0, 0)),
        PlaceOrbit("deg1_square", sub("σ"), 1, 1),
        PlaceOrbit("deg1_nonsquare", sub("στ"), 1, 1),
        PlaceOrbit("deg2_square", g.trivial, 1, 2),
        PlaceOrbit("deg2_nonsquare", sub("τ"), 1, 2),
    ]
    return PlaceSystem(g, orbits + list(extra), require_even_residue)


def extra_places() -> tuple[PlaceOrbit, ...]:
    g = klein_four()
    sub = lambda s: parse_subgroup(g, s)  # noqa: E731
    return (PlaceOrbit("deg3_square", sub("σ"), 1, 3),
            PlaceOrbit("deg3_nonsquare", sub("στ"), 1, 3),
            PlaceOrbit("deg4_square", g.trivial, 1, 4),
            PlaceOrbit("deg4_nonsquare", sub("τ"), 1, 4),
            PlaceOrbit("deg5_square", sub("σ"), 1, 5))


def _ng_coefficient(d: KleinData, cochar) -> int:
    """Z[G]^G ≅ Z, N_G -> 1, applied to the first projection of an element of T_*^G."""
    z = d.first_projection()(cochar)
    if len(set(z)) != 1:
        raise AssertionError("first projection of an invariant cocharacter is not a multiple of N_G")
    return z[0]


def _gcd(values) -> int:
    out = 0
    for v in values:
        out = gcd(out, v)
    return out


@dataclass(frozen=True)
class ImageData:
    p_route_generic: int
    p_route_blocks: tuple[int, int, int]
    t_route: int
    witness_value: int


def image_data(system: PlaceSystem, data: KleinData | None = None) -> ImageData:
    d = data or build_T_star()
    res = d.resolution
    a = system.module
    surj = tensor_lattice_map(res.surj, a)
    fp_p = fixed_points(surj.domain)
    vals = [_ng_coefficient(d, deg_T(system, d.Tstar, surj.matrix.apply(c))) for c in fp_p.lifts.columns()]
    p_generic = _gcd(vals)

    # the same image read as I_K ⊕ I_L ⊕ I_L -> I_L -> Z
    g = system.group
    row = system.degree_row
    deg = lambda v: sum(x * y for x, y in zip(row, v))  # noqa: E731
    s, t, st = (a.action[g.index(x)] for x in ("σ", "τ", "στ"))
    ik = fixed_points(a)
    diag = _gcd(deg(c) for c in ik.lifts.columns())
    b_blk = _gcd(deg((s + st).apply(c)) for c in IntMatrix.identity(a.n_gens).columns())
    c_blk = _gcd(deg((t + st).apply(c)) for c in IntMatrix.identity(a.n_gens).columns())

    fp_t = fixed_points(tensor_module(system, d.Tstar))
    t_vals = [_ng_coefficient(d, deg_T(system, d.Tstar, c)) for c in fp_t.lifts.columns()]
    return ImageData(p_generic, (diag, b_blk, c_blk), _gcd(t_vals), witness_value(system, d))


def witness_idele(system: PlaceSystem, data: KleinData | None = None, place: str = "λ=0") -> tuple[int, ...]:
    """The local point (√(uπ), i) placed at one ramified place, as an element of T_* ⊗ I_L."""
    d = data or build_T_star()
    p = witness_point()
    local = tensor_coordinates(p.t, p.x)
    index = {name: (off, n) for name, off, n, _ in system.places}
    if place not in index:
        raise PlaceError(f"unknown place {place!r}")
    off, n = index[place]
    if n != 3:
        raise PlaceError(f"{place} does not carry the local fragment")
    total = system.module.n_gens
    out = [0] * (d.Tstar.rank * total)
    for i in range(d.Tstar.rank):
        out[i * total + off: i * total + off + 3] = local[3 * i: 3 * i + 3]
    return tuple(out)


def witness_value(system: PlaceSystem, data: KleinData | None = None) -> int:
    d = data or build_T_star()
    return _ng_coefficient(d, deg_T(system, d.Tstar, witness_idele(system, d)))


def verify_global_counterexample(system: PlaceSystem | None = None, data: KleinData | None = None) -> CheckReport:
    d = data or build_T_star()
    system = system or global_preset()
    rep = CheckReport()
    im = image_data(system, d)
    diag, b_blk, c_blk = im.p_route_blocks
    blocks_gen = _gcd(im.p_route_blocks)
    rep.add("prop_6_1_a", im.p_route_generic % 4 == 0 and blocks_gen == im.p_route_generic,
            "the P-route image (P_* ⊗ I_L)^G -> T_*^G -> Z[G]^G ≅ Z lies in 4Z",
            {"generator": im.p_route_generic, "diagonal_block": diag, "sigma_block": b_blk, "tau_block": c_blk})
    rep.add("prop_6_1_b", im.witness_value == 2,
            "(√(uπ), i) at λ=0 is Galois-fixed in T_* ⊗ I_L and has image 2",
            {"value": im.witness_value, "t_route_generator": im.t_route})
    strict = im.p_route_generic % 4 == 0 and im.witness_value % 4 != 0
    rep.add("prop_6_1_verdict", strict,
            "strict containment witnessed: 2 is in the T-route image but not in the P-route image",
            {"verdict": "strict containment witnessed" if strict else "not witnessed",
             "quotient_order_witnessed": im.p_route_generic // gcd(im.p_route_generic, im.witness_value)
             if im.p_route_generic else 0})
    rep.add("diagonal_degree", diagonal_degree_ok(system),
            "deg_{L,F} of a diagonal K-idele is [L:K]·deg_{K,F}")
    return rep


def diagonal_degree_ok(system: PlaceSystem) -> bool:
    fp = fixed_points(system.module)
    row = system.degree_row
    return all(sum(a * b for a, b in zip(row, c)) == system.group.order * system.deg_K(c)
               for c in fp.lifts.columns())


def verify_all() -> CheckReport:
    d = build_T_star()
    system = global_preset()
    rep = verify_global_counterexample(system, d)
    rep.extend(verify_degree_compatibility(system, d))
    pairing = CheckReport()
    for name, m in lattice_zoo(d).items():
        try:
            mat, coker = invariant_pairing(m)
            pairing.add(f"lemma_3_1[{name}]", coker.is_finite(),
                        f"(M°)^G -> (M^G)° is injective with finite cokernel for M = {name}",
                        {"cokernel": str(coker), "order": coker.order})
        except AssertionError as exc:
            pairing.add(f"lemma_3_1[{name}]", False, f"pairing map fails for M = {name}", str(exc))
    rep.extend(pairing)
    enlarged = verify_global_counterexample(global_preset(extra_places()), d)
    rep.add("prop_6_1_a_enlarged", enlarged["prop_6_1_a"].ok and enlarged["prop_6_1_verdict"].ok,
            "adding places with even residue degree keeps the image inside 4Z",
            enlarged["prop_6_1_a"].witness)
    return rep


def lattice_zoo(d: KleinData) -> dict[str, GLattice]:
    g = d.G
    ig, _ = augmentation_kernel(g)
    return {"Z": trivial_lattice(g), "Z[G]": group_ring(g), "I_G": ig, "T_*": d.Tstar}
