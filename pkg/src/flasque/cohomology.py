"""Tate cohomology Ĥ⁻¹, Ĥ⁰ and H¹ of finite groups with lattice coefficients.

All three groups are computed straight from their definitions as subquotients
of integer lattices and classified by Smith normal form.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .groups import Subgroup, subgroups
from .intmat import IntMatrix, hstack, kernel, quotient_invariants, smith_invariants, vstack
from .lattices import GLattice, GroupMismatch, dual, fixed_sublattice, group_ring, norm_operator, augmentation_map


class InternalDisagreement(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True, order=True)
class AbGroupClass:
    """Isomorphism class Z^r + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, each di >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in tors):
            raise ValueError("torsion divisors must be at least 2")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError("torsion divisors must form a divisibility chain")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_cyclic_orders(cls, free_rank: int, orders) -> AbGroupClass:
        """Normalize an arbitrary list of cyclic factor orders (1s are dropped)."""
        orders = [abs(int(d)) for d in orders]
        if any(d == 0 for d in orders):
            raise ValueError("use free_rank for infinite cyclic factors")
        diag = IntMatrix([[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))],
                         len(orders))
        inv = smith_invariants(diag)
        return cls(free_rank, tuple(d for d in inv if d != 1))

    @classmethod
    def parse(cls, text: str) -> AbGroupClass:
        text = text.strip()
        if text == "0":
            return cls()
        free, tors = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("Z/"):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse abelian group {text!r}")
        return cls.from_cyclic_orders(free, tors)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | float:
        return float("inf") if self.free_rank else prod(self.torsion)

    @property
    def exponent(self) -> int | float:
        if self.free_rank:
            return float("inf")
        return self.torsion[-1] if self.torsion else 1

    def __add__(self, other: AbGroupClass) -> AbGroupClass:
        return AbGroupClass.from_cyclic_orders(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


TRIVIAL = AbGroupClass()


def _sub(m: GLattice, h: Subgroup | None) -> Subgroup:
    if h is None:
        return m.group.whole
    if h.parent != m.group:
        raise GroupMismatch("subgroup of a different group")
    return h


def _check_exponent(cls: AbGroupClass, h: Subgroup) -> AbGroupClass:
    if cls.is_finite() and h.order % cls.exponent:
        raise InternalDisagreement(f"exponent of {cls} does not divide |H| = {h.order}")
    return cls


def quotient_class(basis: IntMatrix, sub: IntMatrix) -> AbGroupClass:
    free, tors = quotient_invariants(basis, sub)
    return AbGroupClass(free, tuple(tors))


def tate_h0(h: Subgroup | None, m: GLattice) -> AbGroupClass:
    """Ĥ⁰(H, M) = M^H / N_H M."""
    h = _sub(m, h)
    basis, _ = fixed_sublattice(m, h)
    return _check_exponent(quotient_class(basis, norm_operator(m, h)), h)


def cocycle_matrix(h: Subgroup, m: GLattice) -> IntMatrix:
    """Equations x_{ab} - x_a - a·x_b = 0 over all ordered pairs (a, b) in H x H.

    Unknowns are the cochain (x_a)_{a in H}, flattened in member order.
    """
    r = m.rank
    mem = h.members
    pos = {a: k for k, a in enumerate(mem)}
    n = len(mem) * r
    rows = []
    for a in mem:
        act = m.action[a]
        for b in mem:
            ab = m.group.mul(a, b)
            for i in range(r):
                row = [0] * n
                row[pos[ab] * r + i] += 1
                row[pos[a] * r + i] -= 1
                for k in range(r):
                    row[pos[b] * r + k] -= act[i, k]
                rows.append(row)
    return IntMatrix(rows, n)


def coboundary_matrix(h: Subgroup, m: GLattice) -> IntMatrix:
    """Columns (a·e_j - e_j)_{a in H}, one per basis vector e_j of M."""
    ident = IntMatrix.identity(m.rank)
    return vstack([m.action[a] - ident for a in h.members], m.rank)


def h1(h: Subgroup | None, m: GLattice) -> AbGroupClass:
    """H¹(H, M) = Z¹ / B¹ from crossed homomorphisms."""
    h = _sub(m, h)
    z1 = kernel(cocycle_matrix(h, m))
    return _check_exponent(quotient_class(z1, coboundary_matrix(h, m)), h)


def tate_h_minus1(h: Subgroup | None, m: GLattice) -> AbGroupClass:
    """Ĥ⁻¹(H, M) = ker(N_H) / I_H M."""
    h = _sub(m, h)
    ker_n = kernel(norm_operator(m, h))
    ident = IntMatrix.identity(m.rank)
    aug = hstack([m.action[a] - ident for a in h.members], m.rank)
    return _check_exponent(quotient_class(ker_n, aug), h)


def tate(degree: int, h: Subgroup | None, m: GLattice) -> AbGroupClass:
    if degree == -1:
        return tate_h_minus1(h, m)
    if degree == 0:
        return tate_h0(h, m)
    if degree == 1:
        return h1(h, m)
    raise ValueError(f"unsupported cohomological degree {degree}; use -1, 0 or 1")


def h1_augmentation_ideal_via_sequence(h: Subgroup) -> AbGroupClass:
    """H¹(H, I_G) read off 0 -> I_G -> Z[G] -> Z -> 0.

    Since H¹(H, Z[G]) = 0 and H¹(H, Z) = 0 the connecting map identifies
    H¹(H, I_G) with coker(Z[G]^H -> Z).  Independent of the cocycle route.
    """
    g = h.parent
    zg = group_ring(g)
    basis, _ = fixed_sublattice(zg, h)
    eps = augmentation_map(g).matrix
    images = eps @ basis
    return quotient_class(IntMatrix.identity(1), images)


@dataclass(frozen=True)
class VanishingTest:
    """Outcome of a "for every subgroup" vanishing test; falsy when it fails."""

    holds: bool
    subgroup: Subgroup | None = None
    value: AbGroupClass | None = None

    def __bool__(self):
        return self.holds


def is_coflasque(m: GLattice) -> VanishingTest:
    """H¹(H, M) = 0 for every subgroup H; on failure, the largest offending H and H¹(H, M)."""
    for h in reversed(subgroups(m.group)):
        c = h1(h, m)
        if not c.is_trivial():
            return VanishingTest(False, h, c)
    return VanishingTest(True)


def is_flasque(m: GLattice) -> VanishingTest:
    """Ĥ⁻¹(H, M) = 0 for every subgroup H, cross-checked against coflasqueness of the dual."""
    verdict = VanishingTest(True)
    for h in reversed(subgroups(m.group)):
        c = tate_h_minus1(h, m)
        if not c.is_trivial():
            verdict = VanishingTest(False, h, c)
            break
    via_dual = is_coflasque(dual(m))
    if verdict.holds != via_dual.holds:
        raise InternalDisagreement("Ĥ⁻¹ test and dual H¹ test give different flasque verdicts")
    return verdict


def cohomology_profile(m: GLattice, degrees=(-1, 0, 1)) -> dict[tuple[str, int], AbGroupClass]:
    """Every requested degree over every subgroup, keyed by (subgroup name, degree)."""
    return {(h.name(), d): tate(d, h, m) for h in subgroups(m.group) for d in degrees}
