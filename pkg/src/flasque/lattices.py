"""G-lattices, equivariant maps between them, and the standard constructions.

Conventions: action matrices act on column vectors; a map's matrix has shape
codomain.rank x domain.rank and composition ``f ∘ g`` is ``f.matrix @ g.matrix``.
Returned bases are canonical (Hermite normal form of the spanned subgroup).
"""
from __future__ import annotations

from collections.abc import Sequence
from functools import cached_property

from .groups import FiniteGroup, Subgroup
from .intmat import IntMatrix, Span, block_diag, det, kernel, solve_matrix, vstack


class LatticeError(ValueError):
    pass


class GroupMismatch(LatticeError):
    pass


class NotEquivariant(LatticeError):
    pass


class NotAGroupAction(LatticeError):
    pass


class MapMismatch(LatticeError):
    """Maps that cannot be composed (codomain of one is not the domain of the next)."""


class CompositionMismatch(LatticeError):
    """Two composable maps whose composite is not zero, so exactness is meaningless."""


class GLattice:
    """A free Z-module of finite rank with a G-action by integer matrices."""

    def __init__(self, group: FiniteGroup, rank: int, action: Sequence[IntMatrix], name: str | None = None,
                 check: bool = True):
        self.group = group
        self.rank = rank
        self.action = tuple(a if isinstance(a, IntMatrix) else IntMatrix(a, rank) for a in action)
        self.name = name
        if check:
            self._validate()

    def _validate(self):
        g = self.group
        n = self.rank
        if len(self.action) != g.order:
            raise NotAGroupAction(f"need one matrix per group element, got {len(self.action)}")
        for a in self.action:
            if a.shape != (n, n):
                raise NotAGroupAction(f"action matrix of shape {a.shape}, expected {(n, n)}")
        if self.action[g.identity] != IntMatrix.identity(n):
            raise NotAGroupAction("identity does not act trivially")
        for i in range(g.order):
            for j in range(g.order):
                if self.action[g.mul(i, j)] != self.action[i] @ self.action[j]:
                    raise NotAGroupAction(
                        f"action({g.elements[i]}*{g.elements[j]}) != action({g.elements[i]}) action({g.elements[j]})")
        for i, a in enumerate(self.action):
            if det(a) not in (1, -1):
                raise NotAGroupAction(f"action({g.elements[i]}) is not invertible over Z")

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"GLattice({label}rank={self.rank}, group order={self.group.order})"

    def __eq__(self, other):
        if not isinstance(other, GLattice):
            return NotImplemented
        return self.group == other.group and self.rank == other.rank and self.action == other.action

    def __hash__(self):
        return hash((self.rank, self.action))

    def act(self, g: int, v: Sequence[int]) -> tuple[int, ...]:
        return self.action[g].apply(v)

    def named(self, name: str) -> GLattice:
        return GLattice(self.group, self.rank, self.action, name=name, check=False)

    @cached_property
    def identity_map(self) -> LatticeMap:
        return LatticeMap(self, self, IntMatrix.identity(self.rank), check=False)


class LatticeMap:
    """An equivariant homomorphism; equivariance is checked on every group element."""

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: GLattice, codomain: GLattice, matrix, check: bool = True):
        if domain.group != codomain.group:
            raise GroupMismatch("domain and codomain carry different groups")
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix(matrix, domain.rank)
        if matrix.shape != (codomain.rank, domain.rank):
            raise LatticeError(f"map matrix of shape {matrix.shape}, expected {(codomain.rank, domain.rank)}")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        if check:
            for g in range(domain.group.order):
                if matrix @ domain.action[g] != codomain.action[g] @ matrix:
                    raise NotEquivariant(f"map does not commute with {domain.group.elements[g]}")

    def __repr__(self):
        return f"LatticeMap({self.domain.rank} -> {self.codomain.rank})"

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(v)

    def __matmul__(self, other: LatticeMap) -> LatticeMap:
        if other.codomain != self.domain:
            raise MapMismatch("maps are not composable")
        return LatticeMap(other.domain, self.codomain, self.matrix @ other.matrix, check=False)

    def image(self) -> Span:
        return Span(self.matrix)

    def kernel_basis(self) -> IntMatrix:
        return kernel(self.matrix)

    def is_injective(self) -> bool:
        return self.kernel_basis().ncols == 0

    def is_surjective(self) -> bool:
        return self.image() == Span(IntMatrix.identity(self.codomain.rank))


def zero_lattice(group: FiniteGroup) -> GLattice:
    return trivial_lattice(group, 0)


def zero_map(domain: GLattice, codomain: GLattice) -> LatticeMap:
    return LatticeMap(domain, codomain, IntMatrix.zeros(codomain.rank, domain.rank), check=False)


def trivial_lattice(group: FiniteGroup, rank: int = 1) -> GLattice:
    if rank < 0:
        raise LatticeError("rank must be nonnegative")
    ident = IntMatrix.identity(rank)
    return GLattice(group, rank, [ident] * group.order, name="Z" if rank == 1 else f"Z^{rank}", check=False)


def character_lattice(group: FiniteGroup, signs: Sequence[int]) -> GLattice:
    """Rank one lattice on which element g acts by ``signs[g]`` (each ±1)."""
    return GLattice(group, 1, [IntMatrix([[s]], 1) for s in signs])


def permutation_lattice(group: FiniteGroup, sub: Subgroup) -> GLattice:
    """Z[G/H] with basis the left cosets, in order of smallest member."""
    if sub.parent != group:
        raise GroupMismatch("subgroup of a different group")
    cosets = sub.left_cosets()
    where = {}
    for k, c in enumerate(cosets):
        for x in c:
            where[x] = k
    n = len(cosets)
    mats = []
    for g in range(group.order):
        m = [[0] * n for _ in range(n)]
        for k, c in enumerate(cosets):
            m[where[group.mul(g, c[0])]][k] = 1
        mats.append(IntMatrix(m, n))
    name = "Z[G]" if sub.order == 1 else ("Z" if sub.order == group.order else f"Z[G/{sub.name()}]")
    return GLattice(group, n, mats, name=name, check=False)


def group_ring(group: FiniteGroup) -> GLattice:
    return permutation_lattice(group, group.trivial)


def augmentation_map(group: FiniteGroup) -> LatticeMap:
    """ε: Z[G] -> Z sending every group element to 1."""
    return LatticeMap(group_ring(group), trivial_lattice(group), IntMatrix([[1] * group.order], group.order))


def augmentation_kernel(group: FiniteGroup) -> tuple[GLattice, LatticeMap]:
    """I_G with basis {g - 1 : g != 1} in element order, and its inclusion into Z[G]."""
    e = group.identity
    others = [g for g in range(group.order) if g != e]
    pos = {g: k for k, g in enumerate(others)}
    n = len(others)
    mats = []
    for h in range(group.order):
        m = [[0] * n for _ in range(n)]
        # h(g - 1) = (hg - 1) - (h - 1)
        for k, g in enumerate(others):
            hg = group.mul(h, g)
            if hg != e:
                m[pos[hg]][k] += 1
            if h != e:
                m[pos[h]][k] -= 1
        mats.append(IntMatrix(m, n))
    ig = GLattice(group, n, mats, name="I_G")
    incl = [[0] * n for _ in range(group.order)]
    for k, g in enumerate(others):
        incl[g][k] = 1
        incl[e][k] = -1
    return ig, LatticeMap(ig, group_ring(group), IntMatrix(incl, n))


def direct_sum(*lattices: GLattice) -> GLattice:
    if not lattices:
        raise LatticeError("direct sum of nothing")
    g = lattices[0].group
    if any(m.group != g for m in lattices):
        raise GroupMismatch("direct sum of lattices over different groups")
    mats = [block_diag([m.action[i] for m in lattices]) for i in range(g.order)]
    names = [m.name for m in lattices]
    name = " + ".join(names) if all(names) else None
    return GLattice(g, sum(m.rank for m in lattices), mats, name=name, check=False)


def direct_sum_maps(*maps: LatticeMap) -> LatticeMap:
    dom = direct_sum(*(f.domain for f in maps))
    cod = direct_sum(*(f.codomain for f in maps))
    return LatticeMap(dom, cod, block_diag([f.matrix for f in maps]), check=False)


def tensor(m: GLattice, n: GLattice) -> GLattice:
    """Diagonal action on M (x) N; basis e_i (x) f_j at index i * rank(N) + j."""
    if m.group != n.group:
        raise GroupMismatch("tensor product of lattices over different groups")
    mats = [m.action[i].kron(n.action[i]) for i in range(m.group.order)]
    name = f"{m.name} (x) {n.name}" if m.name and n.name else None
    return GLattice(m.group, m.rank * n.rank, mats, name=name, check=False)


def dual(m: GLattice) -> GLattice:
    """Hom(M, Z) in the dual basis: g acts by the transpose of action(g^-1)."""
    g = m.group
    mats = [m.action[g.inverse(i)].T for i in range(g.order)]
    return GLattice(g, m.rank, mats, name=f"{m.name}°" if m.name else None, check=False)


def restrict(m: GLattice, sub: Subgroup) -> GLattice:
    if sub.parent != m.group:
        raise GroupMismatch("restriction to a subgroup of a different group")
    return GLattice(sub.as_group(), m.rank, [m.action[h] for h in sub.members], name=m.name, check=False)


def norm_operator(m: GLattice, sub: Subgroup | None = None) -> IntMatrix:
    """Σ_{h in H} action(h), H defaulting to the whole group."""
    members = range(m.group.order) if sub is None else sub.members
    total = IntMatrix.zeros(m.rank, m.rank)
    for h in members:
        total = total + m.action[h]
    return total


def _check_sub(m: GLattice, sub: Subgroup | None) -> Subgroup:
    if sub is None:
        return m.group.whole
    if sub.parent != m.group:
        raise GroupMismatch("subgroup of a different group")
    return sub


def fixed_sublattice(m: GLattice, sub: Subgroup | None = None) -> tuple[IntMatrix, int]:
    """Canonical basis (columns) of M^H and its rank."""
    sub = _check_sub(m, sub)
    ident = IntMatrix.identity(m.rank)
    blocks = [m.action[h] - ident for h in sub.members if h != m.group.identity]
    stacked = vstack(blocks, m.rank)
    basis = kernel(stacked)
    return basis, basis.ncols


def induced_action(m: GLattice, basis: IntMatrix, name: str | None = None) -> GLattice:
    """The G-action on the sublattice with the given basis (columns); must be G-stable."""
    mats = []
    for g in range(m.group.order):
        coords = solve_matrix(basis, m.action[g] @ basis) if basis.ncols else IntMatrix.zeros(0, 0)
        if coords is None:
            raise LatticeError(f"sublattice is not stable under {m.group.elements[g]}")
        mats.append(coords)
    return GLattice(m.group, basis.ncols, mats, name=name)


def sublattice(m: GLattice, vectors: Sequence[Sequence[int]], name: str | None = None) -> tuple[GLattice, LatticeMap]:
    """The G-sublattice with the given Z-basis, and its inclusion into M."""
    basis = IntMatrix.from_columns(vectors, m.rank)
    if Span(basis).rank != basis.ncols:
        raise LatticeError("vectors are not linearly independent")
    sub = induced_action(m, basis, name)
    return sub, LatticeMap(sub, m, basis)


def kernel_lattice(f: LatticeMap, name: str | None = None) -> tuple[GLattice, LatticeMap]:
    """Kernel of an equivariant map with its canonical basis, and the inclusion."""
    if not isinstance(f, LatticeMap):
        raise TypeError("kernel_lattice needs a LatticeMap")
    basis = f.kernel_basis()
    k = induced_action(f.domain, basis, name)
    return k, LatticeMap(k, f.domain, basis)


def image_lattice(f: LatticeMap, name: str | None = None) -> tuple[GLattice, LatticeMap]:
    """Image of f with canonical basis, and its inclusion into the codomain."""
    basis = f.image().basis
    im = induced_action(f.codomain, basis, name)
    return im, LatticeMap(im, f.codomain, basis)


def cokernel_class(f: LatticeMap):
    """Abelian group structure of coker(f) as (free_rank, torsion)."""
    from .cohomology import AbGroupClass
    from .intmat import smith_invariants
    inv = smith_invariants(f.matrix)
    return AbGroupClass(f.codomain.rank - len(inv), tuple(d for d in inv if d != 1))


def homology_class(f: LatticeMap, g: LatticeMap):
    """ker(g) / im(f) as an abelian group; needs g ∘ f = 0."""
    from .cohomology import AbGroupClass
    from .intmat import quotient_invariants
    free, tors = quotient_invariants(g.kernel_basis(), f.matrix)
    return AbGroupClass(free, tuple(tors))


def exactness_check(f: LatticeMap, g: LatticeMap) -> bool:
    """True iff image(f) = kernel(g) inside the middle lattice.

    Equality is integral: the canonical bases of both subgroups must agree,
    and the homology ker(g)/im(f) computed by Smith form must vanish too.
    """
    if f.codomain != g.domain:
        raise MapMismatch("codomain of the first map is not the domain of the second")
    if not (g.matrix @ f.matrix).is_zero():
        raise CompositionMismatch("the composite of the two maps is not zero")
    same = f.image() == Span(g.kernel_basis())
    trivial = homology_class(f, g).is_trivial()
    if same != trivial:
        raise AssertionError("HNF and Smith-form exactness tests disagree")
    return same


def equivariant_hom_basis(m: GLattice, n: GLattice) -> list[IntMatrix]:
    """A Z-basis of Hom_G(M, N), as matrices of shape rank(N) x rank(M)."""
    if m.group != n.group:
        raise GroupMismatch("Hom between lattices over different groups")
    r, s = m.rank, n.rank
    if r * s == 0:
        return []
    # unknown X (s x r), flattened row-major; X A_g - B_g X = 0
    rows = []
    for g in range(m.group.order):
        a, b = m.action[g], n.action[g]
        for i in range(s):
            for j in range(r):
                row = [0] * (r * s)
                for k in range(r):
                    row[i * r + k] += a[k, j]
                for k in range(s):
                    row[k * r + j] -= b[i, k]
                rows.append(row)
    ker = kernel(IntMatrix(rows, r * s))
    return [IntMatrix([[c[i * r + j] for j in range(r)] for i in range(s)], r) for c in ker.columns()]


def equivariant_lift(through: LatticeMap, target: LatticeMap) -> LatticeMap | None:
    """An equivariant S: target.domain -> through.domain with through ∘ S = target, if one exists."""
    if through.codomain != target.codomain:
        raise MapMismatch("maps do not share a codomain")
    p, m = target.domain, through.domain
    r, s = p.rank, m.rank
    # unknowns: S (s x r) row-major; equations: equivariance, then through @ S = target
    rows, rhs = [], []
    for g in range(p.group.order):
        a, b = p.action[g], m.action[g]
        for i in range(s):
            for j in range(r):
                row = [0] * (r * s)
                for k in range(r):
                    row[i * r + k] += a[k, j]
                for k in range(s):
                    row[k * r + j] -= b[i, k]
                rows.append(row)
                rhs.append(0)
    f = through.matrix
    for i in range(f.nrows):
        for j in range(r):
            row = [0] * (r * s)
            for k in range(s):
                row[k * r + j] += f[i, k]
            rows.append(row)
            rhs.append(target.matrix[i, j])
    from .intmat import solve
    x = solve(IntMatrix(rows, r * s), rhs)
    if x is None:
        return None
    mat = IntMatrix([[x[i * r + j] for j in range(r)] for i in range(s)], r)
    return LatticeMap(p, m, mat)
