"""Pure-Python integer elimination kernels.

Reference twin of :mod:`flasque._kernels_c`. Both take matrices as lists of
row lists of Python ints and return fresh lists; inputs are never mutated.
Arithmetic here is arbitrary precision, so this path never overflows and is
what the dispatcher in :mod:`flasque.intmat` falls back to.
"""


def row_hnf(rows, ncols, transform):
    """Row Hermite normal form.

    Returns ``(h, u, pivots)`` with ``u @ rows == h`` and ``u`` unimodular
    (``u`` is ``None`` unless *transform*).  Nonzero rows of ``h`` come first,
    pivot entries are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    h = [list(r) for r in rows]
    m = len(h)
    u = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None
    pivots = []
    r = 0
    for j in range(ncols):
        if r == m:
            break
        found = False
        while True:
            best = -1
            best_abs = 0
            for i in range(r, m):
                x = h[i][j]
                if x and (best < 0 or abs(x) < best_abs):
                    best, best_abs = i, abs(x)
            if best < 0:
                break
            found = True
            if best != r:
                h[r], h[best] = h[best], h[r]
                if u is not None:
                    u[r], u[best] = u[best], u[r]
            prow = h[r]
            p = prow[j]
            clean = True
            for i in range(r + 1, m):
                row = h[i]
                x = row[j]
                if not x:
                    continue
                q = x // p
                for k in range(j, ncols):
                    row[k] -= q * prow[k]
                if u is not None:
                    urow, uprow = u[i], u[r]
                    for k in range(m):
                        urow[k] -= q * uprow[k]
                if row[j]:
                    clean = False
            if clean:
                break
        if not found:
            continue
        if h[r][j] < 0:
            h[r] = [-x for x in h[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        prow = h[r]
        p = prow[j]
        for i in range(r):
            row = h[i]
            q = row[j] // p
            if q:
                for k in range(j, ncols):
                    row[k] -= q * prow[k]
                if u is not None:
                    urow, uprow = u[i], u[r]
                    for k in range(m):
                        urow[k] -= q * uprow[k]
        pivots.append(j)
        r += 1
    return h, u, pivots


def smith_invariants(rows, ncols):
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    a = [list(r) for r in rows if any(r)]
    m = len(a)
    n = ncols
    out = []
    t = 0
    while t < m and t < n:
        # smallest nonzero entry of the trailing block becomes the pivot
        bi = bj = -1
        best = 0
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (bi < 0 or abs(x) < best):
                    bi, bj, best = i, j, abs(x)
        if bi < 0:
            break
        a[t], a[bi] = a[bi], a[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // p
                    row, prow = a[i], a[t]
                    for k in range(t, n):
                        row[k] -= q * prow[k]
                    if row[t]:
                        dirty = True
            prow = a[t]
            for j in range(t + 1, n):
                x = prow[j]
                if x:
                    q = x // p
                    for row in a[t:]:
                        row[j] -= q * row[t]
                    if prow[j]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole trailing block
                bad = -1
                for i in range(t + 1, m):
                    if any(x % p for x in a[i][t + 1:]):
                        bad = i
                        break
                if bad < 0:
                    break
                prow, brow = a[t], a[bad]
                for k in range(t, n):
                    prow[k] += brow[k]
            # move the smallest nonzero entry of row/column t into the corner
            bi, bj, best = t, t, abs(a[t][t])
            for i in range(t + 1, m):
                x = a[i][t]
                if x and abs(x) < best:
                    bi, bj, best = i, t, abs(x)
            for j in range(t + 1, n):
                x = a[t][j]
                if x and abs(x) < best:
                    bi, bj, best = t, j, abs(x)
            if bi != t:
                a[t], a[bi] = a[bi], a[t]
            if bj != t:
                for row in a:
                    row[t], row[bj] = row[bj], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out
