"""Exact integer matrices and the lattice algebra built on two kernels.

Matrices act on column vectors. Everything is arbitrary precision: the
compiled kernel is only a fast path and any overflow reroutes the call to
the pure-Python kernel.
"""
from __future__ import annotations

import contextlib
import os
from collections.abc import Iterable, Sequence
from math import gcd

from . import _kernels_py

try:
    if os.environ.get("FLASQUE_PURE_PYTHON"):
        raise ImportError("pure-Python kernels forced by FLASQUE_PURE_PYTHON")
    from . import _kernels_c
except ImportError:
    _kernels_c = None

_active = "compiled" if _kernels_c is not None else "python"


def backend() -> str:
    """Name of the kernel backend currently in use ("compiled" or "python")."""
    return _active


def available_backends() -> list[str]:
    return ["compiled", "python"] if _kernels_c is not None else ["python"]


@contextlib.contextmanager
def use_backend(name: str):
    global _active
    if name not in available_backends():
        raise ValueError(f"kernel backend {name!r} is not available")
    prev, _active = _active, name
    try:
        yield
    finally:
        _active = prev


def _kernel(name, *args):
    if _active == "compiled":
        try:
            return getattr(_kernels_c, name)(*args)
        except OverflowError:
            pass
    return getattr(_kernels_py, name)(*args)


class IntMatrix:
    """Immutable integer matrix with an explicit shape (so 0 x n is representable)."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple[tuple[int, ...], ...], ncols: int) -> IntMatrix:
        # trusted internal path: rows are already tuples of ints of length ncols
        self = object.__new__(cls)
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None
        return self

    # -- constructors -------------------------------------------------------
    @classmethod
    def zeros(cls, m: int, n: int) -> IntMatrix:
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def column(cls, v: Sequence[int]) -> IntMatrix:
        return cls([[x] for x in v], 1)

    @classmethod
    def row(cls, v: Sequence[int]) -> IntMatrix:
        return cls([list(v)], len(v))

    # -- basic protocol -----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]!r}, ncols={self.ncols})"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def columns(self) -> list[tuple[int, ...]]:
        if not self.nrows:
            return [()] * self.ncols
        return list(zip(*self.rows))

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    # -- arithmetic ---------------------------------------------------------
    @property
    def T(self) -> IntMatrix:
        return IntMatrix._raw(tuple(zip(*self.rows)) if self.nrows else ((),) * self.ncols, self.nrows)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return IntMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                              self.ncols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return IntMatrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                              self.ncols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix._raw(tuple(tuple(sum(a * b for a, b in zip(r, c) if a) for c in cols) for r in self.rows),
                              other.ncols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for matrix with {self.ncols} columns")
        return tuple(sum(a * b for a, b in zip(r, v) if a) for r in self.rows)

    def kron(self, other: IntMatrix) -> IntMatrix:
        """Kronecker product; basis e_i (x) f_j sits at index i * dim(f) + j."""
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([a * b for a in r for b in s])
        return IntMatrix(rows, self.ncols * other.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix([[self.rows[i][j] for j in cols] for i in rows], len(cols))


def hstack(blocks: Sequence[IntMatrix], nrows: int | None = None) -> IntMatrix:
    if not blocks:
        if nrows is None:
            raise ValueError("nrows is required to stack no blocks")
        return IntMatrix.zeros(nrows, 0)
    m = blocks[0].nrows
    if any(b.nrows != m for b in blocks):
        raise ValueError("hstack of blocks with different heights")
    return IntMatrix([sum((b.rows[i] for b in blocks), ()) for i in range(m)], sum(b.ncols for b in blocks))


def vstack(blocks: Sequence[IntMatrix], ncols: int | None = None) -> IntMatrix:
    if not blocks:
        if ncols is None:
            raise ValueError("ncols is required to stack no blocks")
        return IntMatrix.zeros(0, ncols)
    n = blocks[0].ncols
    if any(b.ncols != n for b in blocks):
        raise ValueError("vstack of blocks with different widths")
    return IntMatrix([r for b in blocks for r in b.rows], n)


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    n = sum(b.ncols for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append([0] * off + list(r) + [0] * (n - off - b.ncols))
        off += b.ncols
    return IntMatrix(rows, n)


def det(a: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = a.nrows
    if n != a.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = a.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# -- normal forms ------------------------------------------------------------

def row_hnf(a: IntMatrix, transform: bool = False) -> tuple[IntMatrix, IntMatrix | None, list[int]]:
    """Row Hermite normal form ``h = u @ a`` (u unimodular, returned if asked)."""
    h, u, piv = _kernel("row_hnf", a.tolist(), a.ncols, bool(transform))
    return IntMatrix(h, a.ncols), (IntMatrix(u, a.nrows) if u is not None else None), list(piv)


def smith_invariants(a: IntMatrix) -> list[int]:
    """Nonzero invariant factors of *a*, in divisibility order."""
    return list(_kernel("smith_invariants", a.tolist(), a.ncols))


def rank(a: IntMatrix) -> int:
    return len(row_hnf(a)[2])


class Span:
    """A subgroup of Z^n, held canonically by the row HNF of its generators.

    Two spans are equal exactly when their canonical forms agree.
    """

    __slots__ = ("dim", "hnf", "pivots")

    def __init__(self, generators: IntMatrix):
        # generators are the columns
        h, _, piv = row_hnf(generators.T)
        self.dim = generators.nrows
        self.hnf = IntMatrix(h.rows[: len(piv)], self.dim)
        self.pivots = tuple(piv)

    @classmethod
    def of_vectors(cls, vectors: Sequence[Sequence[int]], dim: int) -> Span:
        return cls(IntMatrix.from_columns(vectors, dim))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def basis(self) -> IntMatrix:
        """Canonical basis, one column per generator (dim x rank)."""
        return self.hnf.T if self.rank else IntMatrix.zeros(self.dim, 0)

    def __eq__(self, other):
        if not isinstance(other, Span):
            return NotImplemented
        return self.dim == other.dim and self.hnf == other.hnf

    def __hash__(self):
        return hash((self.dim, self.hnf))

    def __repr__(self):
        return f"Span(dim={self.dim}, rank={self.rank}, basis={self.hnf.tolist()})"

    def reduce(self, v: Sequence[int]) -> list[int]:
        """Reduce *v* against the canonical basis (the remainder is zero iff v is in the span)."""
        v = list(v)
        if len(v) != self.dim:
            raise ValueError("vector has the wrong length")
        for row, j in zip(self.hnf.rows, self.pivots):
            x = v[j]
            if x:
                q = x // row[j]
                if q:
                    for k in range(j, self.dim):
                        v[k] -= q * row[k]
        return v

    def __contains__(self, v) -> bool:
        v = list(v)
        for row, j in zip(self.hnf.rows, self.pivots):
            x = v[j]
            if x:
                p = row[j]
                if x % p:
                    return False
                q = x // p
                for k in range(j, self.dim):
                    v[k] -= q * row[k]
        return not any(v)

    def contains_span(self, other: Span) -> bool:
        return all(tuple(r) in self for r in other.hnf.rows)

    def saturation(self) -> Span:
        """Smallest saturated subgroup containing this one (its Q-span meets Z^n)."""
        return Span(kernel(kernel(self.basis.T).T)) if self.rank else self


def span_basis(generators: IntMatrix) -> IntMatrix:
    """Canonical column basis of the column span of *generators*."""
    return Span(generators).basis


def kernel(a: IntMatrix) -> IntMatrix:
    """Canonical basis (as columns) of {x in Z^n : a x = 0}; always saturated."""
    n = a.ncols
    if n == 0:
        return IntMatrix.zeros(0, 0)
    h, u, piv = row_hnf(a.T, transform=True)
    r = len(piv)
    vecs = [u.rows[i] for i in range(r, n)]
    if not vecs:
        return IntMatrix.zeros(n, 0)
    return span_basis(IntMatrix.from_columns(vecs, n))


def _back_substitute(a: IntMatrix, hnf, b: Sequence[int]) -> tuple[int, ...] | None:
    # u @ a.T = h, so a @ u.T = h.T: solve h.T y = b, then x = u.T y
    h, u, piv = hnf
    n = a.ncols
    y = [0] * n
    resid = list(b)
    for i, j in enumerate(piv):
        p = h.rows[i][j]
        x = resid[j]
        if x % p:
            return None
        q = x // p
        y[i] = q
        if q:
            row = h.rows[i]
            for k in range(j, a.nrows):
                resid[k] -= q * row[k]
    if any(resid):
        return None
    x = tuple(sum(u.rows[i][k] * y[i] for i in range(len(piv)) if y[i]) for k in range(n))
    assert a.apply(x) == tuple(b)
    return x


def solve(a: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer x with a x = b, or None when no integer solution exists."""
    if len(b) != a.nrows:
        raise ValueError("right-hand side has the wrong length")
    if a.ncols == 0:
        return () if not any(b) else None
    return _back_substitute(a, row_hnf(a.T, transform=True), b)


def solve_matrix(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """Integer X with a X = b (column by column), or None."""
    if b.nrows != a.nrows:
        raise ValueError("right-hand side has the wrong number of rows")
    if a.ncols == 0:
        return IntMatrix.zeros(0, b.ncols) if b.is_zero() else None
    hnf = row_hnf(a.T, transform=True)
    cols = []
    for c in b.columns():
        x = _back_substitute(a, hnf, c)
        if x is None:
            return None
        cols.append(x)
    return IntMatrix.from_columns(cols, a.ncols)


def quotient_invariants(basis: IntMatrix, sub: IntMatrix) -> tuple[int, list[int]]:
    """Structure of L / S where L has basis *basis* (full column rank) and S is spanned by *sub*.

    Returns ``(free_rank, torsion)``; raises ``ValueError`` if S is not inside L.
    """
    k = basis.ncols
    coords = solve_matrix(basis, sub) if sub.ncols else IntMatrix.zeros(k, 0)
    if coords is None:
        raise ValueError("subgroup is not contained in the lattice")
    inv = smith_invariants(coords)
    return k - len(inv), [d for d in inv if d != 1]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0
