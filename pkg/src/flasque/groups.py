"""Finite groups given by an explicit multiplication table.

Groups are small (order at most 24) so every axiom is checked by exhaustive
loops at construction time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

MAX_ORDER = 24


class GroupError(ValueError):
    pass


class NotAssociative(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    pass


class DuplicateLabel(GroupError):
    pass


class OrderTooLarge(GroupError):
    pass


class MalformedTable(GroupError):
    pass


@dataclass(frozen=True, eq=True)
class FiniteGroup:
    """A finite group: element labels plus an index table, ``table[i][j] = index of i*j``."""

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, elements={list(self.elements)})"

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(j for j in range(self.order) if self.table[i][j] == e) for i in range(self.order))

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r}") from None

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.table[x][i]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n))

    def closure(self, generators) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        members = {self.identity}
        frontier = list(members)
        gens = set(generators)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, (self.identity,))


def make_group(labels, table) -> FiniteGroup:
    """Validate a multiplication table and build the group.

    Raises one of the :class:`GroupError` subclasses on failure.
    """
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    if n == 0:
        raise MalformedTable("a group has at least one element")
    if n > MAX_ORDER:
        raise OrderTooLarge(f"order {n} exceeds the supported maximum {MAX_ORDER}")
    if len(set(labels)) != n:
        seen = set()
        dup = next(x for x in labels if x in seen or seen.add(x))
        raise DuplicateLabel(f"label {dup!r} is repeated")
    try:
        table = tuple(tuple(int(x) for x in row) for row in table)
    except (TypeError, ValueError):
        raise MalformedTable("table entries must be integers") from None
    if len(table) != n or any(len(row) != n for row in table):
        raise MalformedTable(f"table must be {n}x{n}")
    if any(not 0 <= x < n for row in table for x in row):
        raise MalformedTable("table entry out of range")

    identity = None
    for e in range(n):
        if all(table[e][i] == i and table[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity("no two-sided identity element")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    x, y, z = labels[a], labels[b], labels[c]
                    raise NotAssociative(f"({x}*{y})*{z} != {x}*({y}*{z})")
    for a in range(n):
        if not any(table[a][b] == identity and table[b][a] == identity for b in range(n)):
            raise NoInverse(f"{labels[a]!r} has no inverse")
    return FiniteGroup(labels, table, identity)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        t = self.parent.table
        if self.parent.identity not in members:
            raise GroupError("subgroup must contain the identity")
        ms = set(members)
        if any(t[a][b] not in ms for a in members for b in members):
            raise GroupError("subset is not closed under the group law")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, i):
        return i in self.members

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def labels(self) -> tuple[str, ...]:
        return tuple(self.parent.elements[i] for i in self.members)

    def name(self) -> str:
        if self.order == self.parent.order:
            return "G"
        if self.order == 1:
            return "1"
        return "<" + ",".join(self.labels()[1:]) + ">"

    def __repr__(self):
        return f"Subgroup({self.name()}, order={self.order})"

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self.parent == other.parent and set(self.members) <= set(other.members)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a group in its own right, elements in parent order."""
        pos = {g: k for k, g in enumerate(self.members)}
        t = self.parent.table
        table = tuple(tuple(pos[t[a][b]] for b in self.members) for a in self.members)
        return FiniteGroup(self.labels(), table, pos[self.parent.identity])

    def left_cosets(self) -> list[tuple[int, ...]]:
        """Left cosets gH, each sorted, ordered by smallest member index."""
        seen = set()
        out = []
        t = self.parent.table
        for g in range(self.parent.order):
            if g in seen:
                continue
            coset = tuple(sorted(t[g][h] for h in self.members))
            seen.update(coset)
            out.append(coset)
        return out


def subgroups(group: FiniteGroup) -> list[Subgroup]:
    """Every subgroup exactly once, sorted by order then member indices.

    Grows subgroups one generator at a time from the trivial subgroup; every
    subgroup is reached because it is generated by adding its elements in turn.
    """
    start = frozenset({group.identity})
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for g in range(group.order):
                if g in s:
                    continue
                c = group.closure(s | {g})
                if c not in found:
                    found.add(c)
                    nxt.append(c)
        frontier = nxt
    ordered = sorted((tuple(sorted(s)) for s in found), key=lambda m: (len(m), m))
    return [Subgroup(group, m) for m in ordered]


def parse_subgroup(group: FiniteGroup, spec: str) -> Subgroup:
    """Subgroup from a spec string: "G", "1", or comma-separated generator labels."""
    spec = spec.strip()
    if spec == "G":
        return group.whole
    if spec in ("1", "trivial", "{1}"):
        return group.trivial
    inner = spec[1:-1] if spec.startswith("<") and spec.endswith(">") else spec
    gens = [group.index(s.strip()) for s in inner.split(",") if s.strip()]
    return Subgroup(group, tuple(group.closure(gens)))


# -- standard groups ---------------------------------------------------------

def klein_four() -> FiniteGroup:
    """<σ, τ> with σ² = τ² = 1 and στ = τσ; elements ordered 1, σ, τ, στ."""
    labels = ("1", "σ", "τ", "στ")
    # index bits: bit 0 = σ, bit 1 = τ
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return make_group(labels, table)


def cyclic_group(n: int) -> FiniteGroup:
    labels = ["1"] + [f"c^{k}" if k > 1 else "c" for k in range(1, n)]
    return make_group(labels, [[(i + j) % n for j in range(n)] for i in range(n)])


def symmetric_group(n: int) -> FiniteGroup:
    """S_n acting on {0..n-1}; elements in lexicographic order, composition (p*q)(x) = p(q(x))."""
    perms = list(permutations(range(n)))
    pos = {p: k for k, p in enumerate(perms)}
    table = [[pos[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    labels = ["".join(str(x + 1) for x in p) for p in perms]
    return make_group(labels, table)
