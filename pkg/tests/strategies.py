"""Hypothesis strategies shared by the property tests."""
from hypothesis import strategies as st

from flasque import (IntMatrix, augmentation_kernel, cyclic_group, direct_sum, dual, group_ring, klein_four,
                     subgroups, symmetric_group, tensor, trivial_lattice)
from flasque.intmat import solve_matrix
from flasque.lattices import GLattice, permutation_lattice

GROUPS = {"V4": klein_four(), "C4": cyclic_group(4), "C6": cyclic_group(6), "S3": symmetric_group(3)}


def base_lattices(g):
    ig, _ = augmentation_kernel(g)
    out = [trivial_lattice(g), group_ring(g), ig, dual(ig)]
    out += [permutation_lattice(g, h) for h in subgroups(g)[1:-1]]
    return out


@st.composite
def unimodular(draw, n):
    m = IntMatrix.identity(n)
    for _ in range(draw(st.integers(0, 6))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        if i == j:
            continue
        c = draw(st.integers(-2, 2))
        e = [[int(r == s) + (c if (r, s) == (i, j) else 0) for s in range(n)] for r in range(n)]
        m = IntMatrix(e, n) @ m
    return m


def inverse_unimodular(u):
    return solve_matrix(u, IntMatrix.identity(u.nrows))


@st.composite
def lattices(draw):
    g = GROUPS[draw(st.sampled_from(["V4", "C4", "S3"]))]
    base = base_lattices(g)
    m = draw(st.sampled_from(base))
    op = draw(st.sampled_from(["none", "sum", "dual", "tensor"]))
    if op == "sum":
        m = direct_sum(m, draw(st.sampled_from(base)))
    elif op == "dual":
        m = dual(m)
    elif op == "tensor" and m.rank <= 3:
        small = [b for b in base if b.rank <= 3]
        m = tensor(m, draw(st.sampled_from(small)))
    u = draw(unimodular(m.rank))
    ui = inverse_unimodular(u)
    return GLattice(m.group, m.rank, [u @ a @ ui for a in m.action])
