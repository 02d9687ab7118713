"""The rank-four Klein-four lattice T_* and its explicit coflasque resolution.

Bases: Z[G] is ordered (1, σ, τ, στ); I_G uses (σ−1, τ−1, στ−1).  T_* is the
kernel of Φ: Z[G] ⊕ I_G -> Z[G] ⊕ Z[G],

    Φ(t, x) = (σt − t − x − τx,  τt − t − x − σx),

with x read inside Z[G] through the inclusion I_G ⊂ Z[G].
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache, cached_property

from .groups import FiniteGroup, Subgroup, klein_four, subgroups
from .intmat import IntMatrix, Span, hstack, solve, solve_matrix, vstack
from .lattices import (GLattice, LatticeMap, augmentation_kernel, character_lattice, direct_sum,
                       exactness_check, fixed_sublattice, group_ring, induced_action, kernel_lattice,
                       trivial_lattice)
from .report import CheckReport
from .resolutions import CoflasqueResolution, ResolutionError, compare_resolutions, coflasque_resolution, \
    pullback_resolution


class LiftNotLanding(ResolutionError):
    """A proposed lift vector does not satisfy the defining equations of T_*."""


def zg_element(group: FiniteGroup, terms: dict[str, int] | str) -> tuple[int, ...]:
    """Coordinates in Z[G] of a formal combination, e.g. {"σ": 1, "στ": 1} or "σ+στ"."""
    if isinstance(terms, str):
        out: dict[str, int] = {}
        for tok in terms.replace("−", "-").replace("-", "+-").split("+"):
            tok = tok.strip()
            if not tok:
                continue
            sign = -1 if tok.startswith("-") else 1
            out[tok.lstrip("-")] = out.get(tok.lstrip("-"), 0) + sign
        terms = out
    v = [0] * group.order
    for label, c in terms.items():
        v[group.index(label)] += c
    return tuple(v)


def right_mult_matrix(group: FiniteGroup, a: tuple[int, ...]) -> IntMatrix:
    """Matrix of z -> z·a on Z[G]; it commutes with the left action."""
    n = group.order
    m = [[0] * n for _ in range(n)]
    for g in range(n):
        for h, c in enumerate(a):
            if c:
                m[group.mul(g, h)][g] += c
    return IntMatrix(m, n)


@dataclass(frozen=True, eq=False)
class KleinData:
    G: FiniteGroup
    Z: GLattice
    ZG: GLattice
    IG: GLattice
    ig_incl: LatticeMap
    source: GLattice  # Z[G] ⊕ I_G
    phi: LatticeMap  # Φ
    Tstar: GLattice
    embed: LatticeMap  # T_* -> Z[G] ⊕ I_G

    @property
    def norm_element(self) -> tuple[int, ...]:
        return (1,) * self.G.order

    def to_tstar(self, v) -> tuple[int, ...] | None:
        """T_*-coordinates of a vector of Z[G] ⊕ I_G, or None if it is not in T_*."""
        return solve(self.embed.matrix, v)

    def ig_coords(self, z) -> tuple[int, ...] | None:
        """I_G-coordinates of an element of Z[G], or None if its augmentation is nonzero."""
        return solve(self.ig_incl.matrix, z)

    def first_projection(self) -> LatticeMap:
        """T_* -> Z[G]."""
        return LatticeMap(self.Tstar, self.ZG, IntMatrix(self.embed.matrix.rows[:4], self.Tstar.rank))

    def second_projection(self) -> LatticeMap:
        """T_* -> I_G."""
        return LatticeMap(self.Tstar, self.IG, IntMatrix(self.embed.matrix.rows[4:], self.Tstar.rank))

    def norm_inclusion(self) -> LatticeMap:
        """Z -> T_*, 1 -> (N_G, 0)."""
        y = self.to_tstar(self.norm_element + (0, 0, 0))
        return LatticeMap(self.Z, self.Tstar, IntMatrix.column(y))

    @cached_property
    def resolution(self) -> CoflasqueResolution:
        return build_explicit_resolution(self)


def _phi_matrix(g: FiniteGroup, incl: IntMatrix) -> IntMatrix:
    zg = group_ring(g)
    s, t = zg.action[g.index("σ")], zg.action[g.index("τ")]
    i4 = IntMatrix.identity(4)
    top = hstack([s - i4, -((i4 + t) @ incl)])
    bot = hstack([t - i4, -((i4 + s) @ incl)])
    return vstack([top, bot])


@cache
def build_T_star() -> KleinData:
    g = klein_four()
    zg = group_ring(g)
    ig, incl = augmentation_kernel(g)
    src = direct_sum(zg, ig)
    phi = LatticeMap(src, direct_sum(zg, zg), _phi_matrix(g, incl.matrix))
    tstar, embed = kernel_lattice(phi, name="T_*")
    return KleinData(g, trivial_lattice(g), zg, ig, incl, src, phi, tstar, embed)


def verify_tstar_structure(data: KleinData | None = None) -> CheckReport:
    """Injectivity of T_* -> Z[G] and exactness of 0 -> Z -> T_* -> I_G -> 0."""
    d = data or build_T_star()
    rep = CheckReport()
    rep.add("tstar_rank", d.Tstar.rank == 4, "T_* has rank 4", {"rank": d.Tstar.rank})

    pr1 = IntMatrix(d.embed.matrix.rows[:4], d.Tstar.rank)
    ker = LatticeMap(d.Tstar, d.ZG, pr1, check=False).kernel_basis()
    rep.add("lemma_4_1_i", ker.ncols == 0,
            "the composite T_* ⊂ Z[G] ⊕ I_G -> Z[G] (first projection) is injective",
            {"kernel_rank": ker.ncols,
             "kernel_in_ZG+IG": [list(d.embed.matrix.apply(c)) for c in ker.columns()]})

    seq_stmt = "0 -> Z -> T_* -> I_G -> 0 with 1 -> (N_G, 0) and the second projection is exact"
    fixed_stmt = "T_*^G has rank 1 and is generated by (N_G, 0)"
    if d.to_tstar(d.norm_element + (0, 0, 0)) is None:
        rep.add("lemma_4_1_ii", False, seq_stmt, {"norm_in_T_*": False})
        rep.add("tstar_fixed_rank", False, fixed_stmt, {"norm_in_T_*": False})
        return rep
    a = d.norm_inclusion()
    b = d.second_projection()
    ok_inj = a.is_injective()
    ok_mid = exactness_check(a, b)
    ok_surj = b.is_surjective()
    rep.add("lemma_4_1_ii", ok_inj and ok_mid and ok_surj, seq_stmt,
            {"injective": ok_inj, "exact_at_T_*": ok_mid, "surjective": ok_surj})

    basis, r = fixed_sublattice(d.Tstar, d.G.whole)
    rep.add("tstar_fixed_rank", r == 1 and Span(basis) == Span(a.matrix), fixed_stmt,
            {"rank": r, "basis": basis.tolist()})
    return rep


@dataclass(frozen=True)
class LongSequence:
    maps: tuple[LatticeMap, LatticeMap, LatticeMap]  # T_* -> Z[G]⊕I_G -> A⊕B -> Z_χ
    printed_final: IntMatrix


def long_exact_sequence(data: KleinData | None = None) -> LongSequence:
    """0 -> T_* -> Z[G] ⊕ I_G -> (1−σ)(Z+Zτ) ⊕ (1−τ)(Z+Zσ) -> Z_χ -> 0.

    The middle sublattices are taken with bases ((1−σ), (1−σ)τ) and
    ((1−τ), (1−τ)σ), so a vector (a, b, c, d) means ((1−σ)(a+bτ), (1−τ)(c+dσ)).
    The last map is a − b − c + d onto Z twisted by the character with
    σ, τ -> −1; the printed a + c − b − d is kept for the negative control.
    """
    d = data or build_T_star()
    g = d.G
    one_s = zg_element(g, "1-σ")
    one_t = zg_element(g, "1-τ")
    a_basis = [one_s, right_mult_matrix(g, zg_element(g, "τ")).apply(one_s)]
    b_basis = [one_t, right_mult_matrix(g, zg_element(g, "σ")).apply(one_t)]
    z4 = (0,) * 4
    ab_cols = [u + z4 for u in a_basis] + [z4 + u for u in b_basis]
    ab_basis = IntMatrix.from_columns(ab_cols, 8)
    ab = induced_action(d.phi.codomain, ab_basis, name="A ⊕ B")
    coords = solve_matrix(ab_basis, d.phi.matrix)
    if coords is None:
        raise AssertionError("Φ does not land in A ⊕ B")
    phi_ab = LatticeMap(d.source, ab, coords)
    chi = character_lattice(g, [1, -1, -1, 1])
    last = LatticeMap(ab, chi, IntMatrix([[1, -1, -1, 1]], 4))
    return LongSequence((d.embed, phi_ab, last), IntMatrix([[1, -1, 1, -1]], 4))


def verify_long_exact_sequence(data: KleinData | None = None) -> CheckReport:
    d = data or build_T_star()
    seq = long_exact_sequence(d)
    f0, f1, f2 = seq.maps
    rep = CheckReport()
    rep.add("les_exact_at_tstar", f0.is_injective(), "T_* -> Z[G] ⊕ I_G is injective")
    rep.add("les_exact_at_source", exactness_check(f0, f1), "image of T_* equals the kernel of Φ")
    rep.add("les_exact_at_ab", exactness_check(f1, f2), "image of Φ equals the kernel of the last map")
    gen = f2((1, 0, 0, 0))
    rep.add("les_exact_at_z", f2.is_surjective() and gen == (1,),
            "the last map is onto Z, with (1, 0, 0, 0) -> 1", {"image_of_e1": list(gen)})
    ranks = [f0.domain.rank, f1.domain.rank, f2.domain.rank, f2.codomain.rank]
    alt = ranks[0] - ranks[1] + ranks[2] - ranks[3]
    rep.add("les_ranks", ranks == [4, 7, 4, 1] and alt == 0, "ranks along the sequence are 4, 7, 4, 1",
            {"ranks": ranks, "alternating_sum": alt,
             "printed_final_map_on_image": (seq.printed_final @ f1.matrix).rows[0]})
    return rep


def explicit_lift_vectors(d: KleinData) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(σ+στ, 1−σ) and (τ+στ, 1−τ) as vectors of Z[G] ⊕ I_G."""
    g = d.G
    out = []
    for first, second in (("σ+στ", "1-σ"), ("τ+στ", "1-τ")):
        x = d.ig_coords(zg_element(g, second))
        out.append(zg_element(g, first) + x)
    return out[0], out[1]


def _ig_cover(d: KleinData) -> CoflasqueResolution:
    """Z[G]² -> I_G, (a, b) -> a(1−σ) + b(1−τ), with its kernel."""
    g = d.G
    p = direct_sum(d.ZG, d.ZG).named("Z[G]^2")
    zmat = hstack([right_mult_matrix(g, zg_element(g, "1-σ")), right_mult_matrix(g, zg_element(g, "1-τ"))])
    phi = LatticeMap(p, d.IG, solve_matrix(d.ig_incl.matrix, zmat))
    f, inj = kernel_lattice(phi, name="F_*")
    return CoflasqueResolution(f, p, inj, phi, d.IG, ((g.trivial, 2),)).verify()


def _lift_from_vectors(d: KleinData, p: GLattice, v1, v2) -> LatticeMap:
    """Equivariant Z[G]² -> T_* sending the two generators to v1, v2 (given in Z[G] ⊕ I_G)."""
    cols = []
    for v in (v1, v2):
        if not d.phi.matrix.apply(v) == (0,) * 8:
            raise LiftNotLanding(f"{list(v)} violates the defining equations of T_*")
        for x in range(d.G.order):
            cols.append(d.to_tstar(d.source.act(x, v)))
    return LatticeMap(p, d.Tstar, IntMatrix.from_columns(cols, d.Tstar.rank))


def build_explicit_resolution(data: KleinData | None = None, shift: tuple[int, int] = (0, 0)) -> CoflasqueResolution:
    """0 -> F_* -> Z ⊕ Z[G] ⊕ Z[G] -> T_* -> 0 from the cover of I_G and the explicit lift.

    ``shift = (n, m)`` adds (a, b) -> (an + bm)(N_G, 0) to the lift.
    """
    d = data or build_T_star()
    base = _ig_cover(d)
    v1, v2 = explicit_lift_vectors(d)
    n, m = shift
    nrm = d.norm_element + (0, 0, 0)
    v1 = tuple(a + n * b for a, b in zip(v1, nrm))
    v2 = tuple(a + m * b for a, b in zip(v2, nrm))
    lift = _lift_from_vectors(d, base.P, v1, v2)
    res = pullback_resolution(base, d.second_projection(), lift)
    # the kernel generator of T_* -> I_G may come out as ±(N_G, 0); pin it to +(N_G, 0)
    if d.first_projection()(res.surj.matrix.col(0)) != d.norm_element:
        flip = IntMatrix([[-1 if (i == j == 0) else int(i == j) for j in range(9)] for i in range(9)], 9)
        res = CoflasqueResolution(res.F, res.P, LatticeMap(res.F, res.P, flip @ res.inj.matrix),
                                  LatticeMap(res.P, d.Tstar, res.surj.matrix @ flip), d.Tstar, res.blocks).verify()
    return res


def composed_formula(d: KleinData) -> list[tuple[int, ...]]:
    """Expected images in Z[G] of the 9 basis vectors: N_G a + (σ+στ) b + (τ+στ) c."""
    g = d.G
    out = [d.norm_element]
    for elt in ("σ+στ", "τ+στ"):
        r = zg_element(g, elt)
        out += [d.ZG.act(x, r) for x in range(g.order)]
    return out


def verify_explicit_resolution(data: KleinData | None = None) -> CheckReport:
    d = data or build_T_star()
    rep = CheckReport()
    base = _ig_cover(d)
    rep.add("ig_cover_coflasque", base.F.rank == 5,
            "Z[G]² -> I_G, (a, b) -> a(1−σ) + b(1−τ) is a coflasque resolution with kernel of rank 5",
            {"F_rank": base.F.rank})
    v1, v2 = explicit_lift_vectors(d)
    lands = [d.phi.matrix.apply(v) == (0,) * 8 for v in (v1, v2)]
    rep.add("lift_lands_in_tstar", all(lands), "(σ+στ, 1−σ) and (τ+στ, 1−τ) satisfy the equations of T_*",
            {"vectors": [list(v1), list(v2)]})
    res = d.resolution
    rep.add("resolution_ranks", res.P.rank == 9 and res.F.rank == 5,
            "P_* = Z ⊕ Z[G] ⊕ Z[G] has rank 9 and F_* has rank 5",
            {"P_rank": res.P.rank, "F_rank": res.F.rank, "blocks": res.summary()["blocks"]})
    rep.add("resolution_exact", exactness_check(res.inj, res.surj) and res.surj.is_surjective()
            and res.inj.is_injective(), "0 -> F_* -> P_* -> T_* -> 0 is exact")
    rep.add("resolution_coflasque", bool(res.summary()["coflasque"]), "H¹(H, F_*) = 0 for every subgroup H")
    got = [d.first_projection()(res.surj.matrix.col(j)) for j in range(9)]
    want = composed_formula(d)
    rep.add("resolution_formula", got == want,
            "P_* -> T_* -> Z[G] is (a, b, c) -> N_G a + (σ+στ) b + (τ+στ) c on all 9 basis vectors",
            {"images": [list(v) for v in got]})
    return rep


def verify_lift_ambiguity(n: int, m: int, data: KleinData | None = None) -> CheckReport:
    """The lift shifted by (a, b) -> (an + bm)(N_G, 0) is again a lift landing in T_*."""
    d = data or build_T_star()
    rep = CheckReport()
    base = _ig_cover(d)
    v1, v2 = explicit_lift_vectors(d)
    s0 = _lift_from_vectors(d, base.P, v1, v2)
    nrm = d.norm_element + (0, 0, 0)
    w1 = tuple(a + n * b for a, b in zip(v1, nrm))
    w2 = tuple(a + m * b for a, b in zip(v2, nrm))
    try:
        s1 = _lift_from_vectors(d, base.P, w1, w2)
        lands = True
    except LiftNotLanding:
        lands = False
    key = f"lift_ambiguity[{n},{m}]"
    if not lands:
        rep.add(key, False, "shifted lift leaves T_*", {"n": n, "m": m})
        return rep
    proj = d.second_projection()
    is_lift = proj.matrix @ s1.matrix == base.surj.matrix
    emb = d.embed.matrix
    diff = emb @ (s1.matrix - s0.matrix)
    expected = IntMatrix.from_columns([tuple(n * x for x in nrm)] * 4 + [tuple(m * x for x in nrm)] * 4, 7)
    same = diff == expected
    rebuilt = build_explicit_resolution(d, (n, m))
    rep.add(key, is_lift and same and rebuilt.F.rank == 5,
            "the shifted map is an equivariant lift into T_* differing from the original by (a, b) -> (an+bm)(N_G, 0)",
            {"n": n, "m": m, "is_lift": is_lift, "difference_matches": same})
    return rep


def compare_with_generic(data: KleinData | None = None) -> CheckReport:
    d = data or build_T_star()
    rep = CheckReport()
    gen = coflasque_resolution(d.Tstar)
    cmp = compare_resolutions(gen, d.resolution)
    rep.add("compare_generic_vs_explicit", cmp.passes,
            "generic and explicit resolutions of T_* satisfy the necessary conditions for F1 ⊕ P2 ≅ F2 ⊕ P1",
            {"ranks": [cmp.rank_left, cmp.rank_right], "classes_checked": cmp.checked,
             "mismatches": [list(map(str, x)) for x in cmp.mismatches]})
    return rep


def verify_all(data: KleinData | None = None) -> CheckReport:
    d = data or build_T_star()
    rep = verify_tstar_structure(d)
    rep.extend(verify_long_exact_sequence(d))
    rep.extend(verify_explicit_resolution(d))
    for n in (-2, -1, 0, 1, 2):
        for m in (-2, -1, 0, 1, 2):
            rep.extend(verify_lift_ambiguity(n, m, d))
    rep.extend(compare_with_generic(d))
    return rep


def klein_subgroups() -> list[Subgroup]:
    return subgroups(build_T_star().G)
