"""Finitely generated abelian groups with a G-action, given by presentations.

A module is Z^n modulo the span of its relation columns.  Elements are plain
coordinate vectors; two vectors denote the same element when their difference
lies in the relation span.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

from .cohomology import AbGroupClass
from .groups import FiniteGroup, Subgroup
from .intmat import IntMatrix, Span, block_diag, hstack, kernel, smith_invariants, solve, solve_matrix, vstack
from .lattices import GLattice, GroupMismatch, NotEquivariant


class ModuleError(ValueError):
    pass


class RelationsNotStable(ModuleError):
    pass


class NotWellDefined(ModuleError):
    pass


class FgAbGModule:
    def __init__(self, group: FiniteGroup, n_gens: int, relations: IntMatrix, action: Sequence[IntMatrix],
                 names: Sequence[str] | None = None, check: bool = True):
        if relations.nrows != n_gens:
            raise ModuleError("relation columns must have one entry per generator")
        self.group = group
        self.n_gens = n_gens
        self.relations = relations
        self.action = tuple(action)
        self.names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(n_gens))
        if check:
            self._validate()

    def _validate(self):
        g, n = self.group, self.n_gens
        if len(self.action) != g.order:
            raise ModuleError("need one action matrix per group element")
        if any(a.shape != (n, n) for a in self.action):
            raise ModuleError("action matrices must be n_gens x n_gens")
        rel = self.relation_span
        for i, a in enumerate(self.action):
            for c in (a @ self.relations).columns():
                if c not in rel:
                    raise RelationsNotStable(f"{g.elements[i]} does not preserve the relation subgroup")
        ident = IntMatrix.identity(n)
        if not self._congruent(self.action[g.identity], ident):
            raise ModuleError("identity does not act trivially modulo relations")
        for i in range(g.order):
            for j in range(g.order):
                if not self._congruent(self.action[g.mul(i, j)], self.action[i] @ self.action[j]):
                    raise ModuleError(f"action is not a homomorphism at ({g.elements[i]}, {g.elements[j]})")

    def _congruent(self, a: IntMatrix, b: IntMatrix) -> bool:
        rel = self.relation_span
        return all(c in rel for c in (a - b).columns())

    def __repr__(self):
        return f"FgAbGModule(n_gens={self.n_gens}, relations={self.relations.ncols}, group order={self.group.order})"

    @cached_property
    def relation_span(self) -> Span:
        return Span(self.relations)

    @cached_property
    def abelian_class(self) -> AbGroupClass:
        """Isomorphism class of the underlying abelian group."""
        inv = smith_invariants(self.relations)
        return AbGroupClass(self.n_gens - len(inv), tuple(d for d in inv if d != 1))

    def element(self, coords: Sequence[int]) -> ModuleElement:
        return ModuleElement(self, tuple(coords))

    def zero(self) -> ModuleElement:
        return self.element((0,) * self.n_gens)

    def gen(self, i: int) -> ModuleElement:
        return self.element(tuple(int(i == k) for k in range(self.n_gens)))

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return tuple(a - b for a, b in zip(u, v)) in self.relation_span

    def is_zero(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.relation_span

    def act(self, g: int, v: Sequence[int]) -> tuple[int, ...]:
        return self.action[g].apply(v)

    def norm(self, v: Sequence[int], sub: Subgroup | None = None) -> tuple[int, ...]:
        members = range(self.group.order) if sub is None else sub.members
        out = [0] * self.n_gens
        for g in members:
            out = [a + b for a, b in zip(out, self.act(g, v))]
        return tuple(out)

    def is_fixed(self, v: Sequence[int]) -> bool:
        return all(self.equal(self.act(g, v), v) for g in range(self.group.order))

    def identity_map(self) -> ModuleMap:
        return ModuleMap(self, self, IntMatrix.identity(self.n_gens), check=False)


@dataclass(frozen=True, eq=False)
class ModuleElement:
    module: FgAbGModule
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.module.n_gens:
            raise ModuleError("coordinate vector has the wrong length")

    def __eq__(self, other):
        if not isinstance(other, ModuleElement) or other.module is not self.module:
            return NotImplemented
        return self.module.equal(self.coords, other.coords)

    __hash__ = None

    def __add__(self, other: ModuleElement) -> ModuleElement:
        return ModuleElement(self.module, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: ModuleElement) -> ModuleElement:
        return ModuleElement(self.module, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> ModuleElement:
        return ModuleElement(self.module, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> ModuleElement:
        return ModuleElement(self.module, tuple(k * a for a in self.coords))

    def act(self, g: int) -> ModuleElement:
        return ModuleElement(self.module, self.module.act(g, self.coords))

    def is_zero(self) -> bool:
        return self.module.is_zero(self.coords)


class ModuleMap:
    """Homomorphism of presented modules given on generators.

    The matrix must send relations into relations and commute with the
    actions modulo the codomain relations.
    """

    def __init__(self, domain: FgAbGModule, codomain: FgAbGModule, matrix: IntMatrix, check: bool = True):
        if domain.group != codomain.group:
            raise GroupMismatch("modules over different groups")
        if matrix.shape != (codomain.n_gens, domain.n_gens):
            raise ModuleError(f"map matrix of shape {matrix.shape}, expected {(codomain.n_gens, domain.n_gens)}")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        if check:
            rel = codomain.relation_span
            for c in (matrix @ domain.relations).columns():
                if c not in rel:
                    raise NotWellDefined("a relation of the domain does not map to zero")
            for g in range(domain.group.order):
                diff = matrix @ domain.action[g] - codomain.action[g] @ matrix
                if any(c not in rel for c in diff.columns()):
                    raise NotEquivariant(f"map does not commute with {domain.group.elements[g]}")

    def __call__(self, x):
        coords = x.coords if isinstance(x, ModuleElement) else x
        return ModuleElement(self.codomain, self.matrix.apply(coords))

    def __matmul__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(other.domain, self.codomain, self.matrix @ other.matrix, check=False)


def from_lattice(m: GLattice) -> FgAbGModule:
    return FgAbGModule(m.group, m.rank, IntMatrix.zeros(m.rank, 0), m.action, check=False)


def trivial_module(group: FiniteGroup, rank: int = 1) -> FgAbGModule:
    ident = IntMatrix.identity(rank)
    return FgAbGModule(group, rank, IntMatrix.zeros(rank, 0), [ident] * group.order, check=False)


def tensor_lattice_module(m: GLattice, a: FgAbGModule) -> FgAbGModule:
    """M (x) A with the diagonal action; generator e_i (x) a_j at index i * n_gens(A) + j."""
    if m.group != a.group:
        raise GroupMismatch("lattice and module over different groups")
    rel = IntMatrix.identity(m.rank).kron(a.relations)
    action = [m.action[g].kron(a.action[g]) for g in range(m.group.order)]
    names = [f"b{i}⊗{nm}" for i in range(m.rank) for nm in a.names]
    return FgAbGModule(m.group, m.rank * a.n_gens, rel, action, names=names, check=False)


def tensor_lattice_map(f, a: FgAbGModule) -> ModuleMap:
    """f (x) id_A between the tensored modules."""
    return ModuleMap(tensor_lattice_module(f.domain, a), tensor_lattice_module(f.codomain, a),
                     f.matrix.kron(IntMatrix.identity(a.n_gens)))


def direct_sum_modules(*mods: FgAbGModule) -> FgAbGModule:
    g = mods[0].group
    if any(m.group != g for m in mods):
        raise GroupMismatch("direct sum of modules over different groups")
    rel = block_diag([m.relations for m in mods])
    action = [block_diag([m.action[i] for m in mods]) for i in range(g.order)]
    names = [nm for m in mods for nm in m.names]
    return FgAbGModule(g, sum(m.n_gens for m in mods), rel, action, names=names, check=False)


def induced_module(local: FgAbGModule, parent: FiniteGroup, decomposition: Subgroup) -> FgAbGModule:
    """Z[G] (x)_{Z[D]} A for a module A over D (given as ``decomposition.as_group()``).

    Generators are blocked by the left cosets r_i D (ordered by smallest member);
    block i holds r_i (x) A.
    """
    if decomposition.parent != parent:
        raise GroupMismatch("decomposition subgroup of a different group")
    if local.group != decomposition.as_group():
        raise GroupMismatch("local module must be a module over the decomposition subgroup")
    cosets = decomposition.left_cosets()
    reps = [c[0] for c in cosets]
    where = {x: k for k, c in enumerate(cosets) for x in c}
    dpos = {d: k for k, d in enumerate(decomposition.members)}
    inv = parent.inverse
    n, k = local.n_gens, len(reps)
    zero = IntMatrix.zeros(n, n)
    action = []
    for g in range(parent.order):
        blocks = [[zero] * k for _ in range(k)]
        for i, r in enumerate(reps):
            gr = parent.mul(g, r)
            j = where[gr]
            d = parent.mul(inv(reps[j]), gr)
            blocks[j][i] = local.action[dpos[d]]
        action.append(vstack([hstack(row) for row in blocks]))
    rel = block_diag([local.relations] * k)
    names = [f"{parent.elements[r]}·{nm}" for r in reps for nm in local.names]
    return FgAbGModule(parent, n * k, rel, action, names=names)


@dataclass(frozen=True)
class FixedPoints:
    """A^G presented as an abelian group: generators ``lifts`` (columns in A-coordinates)
    subject to ``relations`` (columns in lift coordinates)."""

    module: FgAbGModule
    lifts: IntMatrix
    relations: IntMatrix

    @property
    def n_gens(self) -> int:
        return self.lifts.ncols

    @cached_property
    def group_class(self) -> AbGroupClass:
        inv = smith_invariants(self.relations)
        return AbGroupClass(self.n_gens - len(inv), tuple(d for d in inv if d != 1))

    def lift(self, i: int) -> ModuleElement:
        return self.module.element(self.lifts.col(i))

    def as_module(self) -> FgAbGModule:
        """A^G as a module with trivial action."""
        g = self.module.group
        ident = IntMatrix.identity(self.n_gens)
        names = [f"f{i}" for i in range(self.n_gens)]
        return FgAbGModule(g, self.n_gens, self.relations, [ident] * g.order, names=names, check=False)

    def inclusion(self) -> ModuleMap:
        return ModuleMap(self.as_module(), self.module, self.lifts)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Coordinates of a fixed element in the lift basis (modulo relations), or None if not fixed."""
        sol = solve(hstack([self.lifts, self.module.relations]), v)
        return None if sol is None else sol[: self.n_gens]


def fixed_points(a: FgAbGModule) -> FixedPoints:
    """The subgroup {x : g·x ≡ x for all g}, which contains the relation span.

    Solves (action(g) - I) x = R y_g simultaneously for all g by one integer
    kernel computation and projects onto the x coordinates.
    """
    n = a.n_gens
    k = a.relations.ncols
    ident = IntMatrix.identity(n)
    others = [g for g in range(a.group.order) if g != a.group.identity]
    if not others or n == 0:
        lifts = IntMatrix.identity(n)
    else:
        blocks = []
        for pos, g in enumerate(others):
            row = [a.action[g] - ident]
            for q in range(len(others)):
                row.append(-a.relations if q == pos else IntMatrix.zeros(n, k))
            blocks.append(hstack(row, n))
        ker = kernel(vstack(blocks))
        proj = IntMatrix(ker.rows[:n], ker.ncols)
        lifts = Span(proj).basis
    coords = solve_matrix(lifts, a.relations) if k else IntMatrix.zeros(lifts.ncols, 0)
    if coords is None:
        raise ModuleError("relations are not fixed; module action is inconsistent")
    return FixedPoints(a, lifts, coords)


def solve_preimage(f: ModuleMap, y) -> ModuleElement | None:
    """Some x with f(x) ≡ y modulo the codomain relations, or None if none exists."""
    coords = y.coords if isinstance(y, ModuleElement) else tuple(y)
    system = hstack([f.matrix, f.codomain.relations])
    sol = solve(system, coords)
    if sol is None:
        return None
    x = f.domain.element(sol[: f.domain.n_gens])
    if not f.codomain.equal(f.matrix.apply(x.coords), coords):
        raise AssertionError("preimage solver returned a non-solution")
    return x
