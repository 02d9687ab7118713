"""Coflasque resolutions 0 -> F -> P -> M -> 0 with P a permutation lattice.

Every resolution returned here has been re-verified: exactness at both
junctions, surjectivity, and vanishing of H¹(H, F) for every subgroup H.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import AbGroupClass, is_coflasque, tate
from .groups import Subgroup, subgroups
from .intmat import IntMatrix, hstack, solve_matrix
from .lattices import (GLattice, LatticeError, LatticeMap, direct_sum, equivariant_lift, exactness_check,
                       fixed_sublattice, kernel_lattice, permutation_lattice, zero_lattice, zero_map)


class ResolutionError(LatticeError):
    pass


class SurjectivityFailure(ResolutionError):
    pass


class CoflasquenessFailure(ResolutionError):
    pass


class ExactnessFailure(ResolutionError):
    pass


class NotSurjective(ResolutionError):
    pass


class NotPermutation(ResolutionError):
    pass


class TargetMismatch(ResolutionError):
    pass


Blocks = tuple[tuple[Subgroup, int], ...]


@dataclass(frozen=True, eq=False)
class CoflasqueResolution:
    F: GLattice
    P: GLattice
    inj: LatticeMap
    surj: LatticeMap
    target: GLattice
    blocks: Blocks = field(default=())

    def verify(self) -> CoflasqueResolution:
        """Re-check every defining property; raises on the first failure."""
        if self.inj.domain != self.F or self.inj.codomain != self.P:
            raise ResolutionError("injection does not run F -> P")
        if self.surj.domain != self.P or self.surj.codomain != self.target:
            raise ResolutionError("surjection does not run P -> M")
        if not _is_permutation(self.P):
            raise NotPermutation("middle term does not act by permutation matrices")
        if sum(self.P.group.order // h.order * k for h, k in self.blocks) != self.P.rank:
            raise ResolutionError("permutation blocks do not account for the rank of P")
        if not self.inj.is_injective():
            raise ExactnessFailure("F -> P is not injective")
        if not exactness_check(self.inj, self.surj):
            raise ExactnessFailure("image(F) differs from kernel(P -> M)")
        if not self.surj.is_surjective():
            raise SurjectivityFailure("P -> M is not surjective")
        if self.F.rank + self.target.rank != self.P.rank:
            raise ExactnessFailure("ranks are not additive")
        if not is_coflasque(self.P):
            raise CoflasquenessFailure("permutation lattice with nonzero H¹; cohomology engine is inconsistent")
        verdict = is_coflasque(self.F)
        if not verdict:
            raise CoflasquenessFailure(f"H¹({verdict.subgroup.name()}, F) = {verdict.value}")
        return self

    def summary(self) -> dict:
        return {
            "target_rank": self.target.rank,
            "P_rank": self.P.rank,
            "F_rank": self.F.rank,
            "blocks": [{"subgroup": h.name(), "order": h.order, "multiplicity": k} for h, k in self.blocks],
            "coflasque": bool(is_coflasque(self.F)),
        }


def _is_permutation(m: GLattice) -> bool:
    for a in m.action:
        for row in a.rows:
            if sorted(row) != [0] * (m.rank - 1) + [1]:
                return False
    return True


def _orbit_blocks(m: GLattice) -> Blocks:
    """Stabilizers of basis-vector orbits of a lattice acting by permutation matrices."""
    g = m.group
    seen: set[int] = set()
    counts: dict[Subgroup, int] = {}
    for i in range(m.rank):
        if i in seen:
            continue
        e = tuple(int(k == i) for k in range(m.rank))
        orbit = {m.act(x, e).index(1) for x in range(g.order)}
        seen |= orbit
        stab = Subgroup(g, tuple(x for x in range(g.order) if m.act(x, e) == e))
        counts[stab] = counts.get(stab, 0) + 1
    order = {h: k for k, h in enumerate(subgroups(g))}
    return tuple(sorted(counts.items(), key=lambda kv: order[kv[0]]))


def coflasque_resolution(m: GLattice) -> CoflasqueResolution:
    """Generic resolution: one copy of Z[G/H] per basis vector of M^H, for every subgroup H.

    The distinguished coset H of the (H, i) block goes to the i-th canonical
    basis vector b of M^H and the coset gH to g·b.  Since P^H -> M^H is then
    onto for every H, the kernel is coflasque; this is re-verified anyway.
    """
    g = m.group
    pieces, cols, blocks = [], [], []
    for h in subgroups(g):
        basis, r = fixed_sublattice(m, h)
        if r == 0:
            continue
        blocks.append((h, r))
        cosets = h.left_cosets()
        for b in basis.columns():
            pieces.append(permutation_lattice(g, h))
            cols += [m.act(c[0], b) for c in cosets]
    if not pieces:
        p = zero_lattice(g)
        surj = zero_map(p, m)
    else:
        p = direct_sum(*pieces)
        surj = LatticeMap(p, m, IntMatrix.from_columns(cols, m.rank))
    if not surj.is_surjective():
        raise SurjectivityFailure("generic permutation cover does not reach all of M")
    f, inj = kernel_lattice(surj, name="F")
    return CoflasqueResolution(f, p.named("P"), _retarget(inj, p), surj, m, tuple(blocks)).verify()


def _retarget(inj: LatticeMap, p: GLattice) -> LatticeMap:
    return LatticeMap(inj.domain, p.named("P"), inj.matrix, check=False)


def pullback_resolution(res: CoflasqueResolution, f: LatticeMap, lift: LatticeMap | None = None
                        ) -> CoflasqueResolution:
    """Resolution of M from a resolution of N and a surjection f: M -> N.

    With K = ker f (required to be a permutation lattice) and s: P -> M an
    equivariant lift of P -> N through f, the new middle term is K + P mapping
    by (k, p) -> k + s(p); F embeds by x -> (-s(inj x) read in K, inj x).
    """
    if f.codomain != res.target:
        raise TargetMismatch("map does not land in the resolved lattice")
    if not f.is_surjective():
        raise NotSurjective("pullback needs a surjective map")
    m = f.domain
    if lift is None:
        lift = equivariant_lift(f, res.surj)
        if lift is None:
            raise ResolutionError("the permutation cover does not lift through the map")
    if lift.domain != res.P or lift.codomain != m or f.matrix @ lift.matrix != res.surj.matrix:
        raise ResolutionError("supplied map is not a lift of P -> N through f")
    k, k_incl = kernel_lattice(f, name="K")
    if not _is_permutation(k):
        raise NotPermutation("kernel of the map is not a permutation lattice in its canonical basis")
    p_new = direct_sum(k, res.P).named("P")
    surj = LatticeMap(p_new, m, hstack([k_incl.matrix, lift.matrix], m.rank))
    through = lift.matrix @ res.inj.matrix
    k_coords = solve_matrix(k_incl.matrix, through) if through.ncols else IntMatrix.zeros(k.rank, 0)
    if k_coords is None:
        raise ResolutionError("s(inj(F)) does not lie in the kernel of f")
    inj = LatticeMap(res.F, p_new, IntMatrix(list((-k_coords).rows) + list(res.inj.matrix.rows), res.F.rank))
    blocks = _merge_blocks(_orbit_blocks(k), res.blocks)
    return CoflasqueResolution(res.F, p_new, inj, surj, m, blocks).verify()


def _merge_blocks(a: Blocks, b: Blocks) -> Blocks:
    counts: dict[Subgroup, int] = {}
    for h, k in a + b:
        counts[h] = counts.get(h, 0) + k
    if not counts:
        return ()
    order = {h: k for k, h in enumerate(subgroups(next(iter(counts)).parent))}
    return tuple(sorted(counts.items(), key=lambda kv: order[kv[0]]))


@dataclass(frozen=True)
class ComparisonReport:
    """Necessary conditions for F1 + P2 ≅ F2 + P1; never a proof of isomorphism."""

    rank_left: int
    rank_right: int
    mismatches: tuple[tuple[str, int, AbGroupClass, AbGroupClass], ...]
    fixed_rank_mismatches: tuple[tuple[str, int, int], ...]
    checked: int

    @property
    def passes(self) -> bool:
        return self.rank_left == self.rank_right and not self.mismatches and not self.fixed_rank_mismatches

    def __bool__(self):
        return self.passes


def compare_resolutions(r1: CoflasqueResolution, r2: CoflasqueResolution, degrees=(-1, 0, 1)) -> ComparisonReport:
    if r1.target != r2.target:
        raise TargetMismatch("resolutions of different lattices")
    left = direct_sum(r1.F, r2.P)
    right = direct_sum(r2.F, r1.P)
    mism, fixed_mism, checked = [], [], 0
    for h in subgroups(left.group):
        for d in degrees:
            a, b = tate(d, h, left), tate(d, h, right)
            checked += 1
            if a != b:
                mism.append((h.name(), d, a, b))
        ra, rb = fixed_sublattice(left, h)[1], fixed_sublattice(right, h)[1]
        if ra != rb:
            fixed_mism.append((h.name(), ra, rb))
    return ComparisonReport(left.rank, right.rank, tuple(mism), tuple(fixed_mism), checked)
