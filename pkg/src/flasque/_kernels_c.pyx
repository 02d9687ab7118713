# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer elimination kernels.

Same contracts as :mod:`flasque._kernels_py`, computed in 64-bit words.
Every product and sum is overflow-checked; on overflow (or an input entry that
does not fit) ``OverflowError`` is raised and the caller reruns the pure
Python kernel, so results are always exact.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef long long i64

cdef extern from *:
    """
    static inline int fl_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int fl_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int fl_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int fl_mul(i64 a, i64 b, i64 *r) nogil
    int fl_sub(i64 a, i64 b, i64 *r) nogil
    int fl_add(i64 a, i64 b, i64 *r) nogil

cdef i64 LIMIT = 4611686018427387904  # 2**62; keeps abs() and negation safe


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i64 iabs(i64 a) nogil:
    return -a if a < 0 else a


cdef int axpy(i64 *dst, const i64 *src, i64 q, Py_ssize_t start, Py_ssize_t stop) except -1 nogil:
    # dst[k] -= q * src[k]
    cdef Py_ssize_t k
    cdef i64 t
    for k in range(start, stop):
        if src[k] == 0:
            continue
        if fl_mul(q, src[k], &t) or fl_sub(dst[k], t, &dst[k]) or iabs(dst[k]) >= LIMIT:
            with gil:
                raise OverflowError("int64 kernel overflow")
    return 0


cdef int addrow(i64 *dst, const i64 *src, Py_ssize_t start, Py_ssize_t stop) except -1 nogil:
    cdef Py_ssize_t k
    for k in range(start, stop):
        if fl_add(dst[k], src[k], &dst[k]) or iabs(dst[k]) >= LIMIT:
            with gil:
                raise OverflowError("int64 kernel overflow")
    return 0


cdef i64 *load(rows, Py_ssize_t m, Py_ssize_t n) except NULL:
    cdef i64 *a = <i64 *> malloc((m * n + 1) * sizeof(i64))
    cdef Py_ssize_t i, j
    cdef i64 x
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            row = rows[i]
            for j in range(n):
                x = row[j]
                if iabs(x) >= LIMIT:
                    raise OverflowError("entry too large for int64 kernel")
                a[i * n + j] = x
    except BaseException:
        free(a)
        raise
    return a


cdef list dump(i64 *a, Py_ssize_t m, Py_ssize_t n):
    return [[a[i * n + j] for j in range(n)] for i in range(m)]


cdef void swaprows(i64 *a, Py_ssize_t n, Py_ssize_t i, Py_ssize_t j, i64 *tmp) nogil:
    memcpy(tmp, &a[i * n], n * sizeof(i64))
    memcpy(&a[i * n], &a[j * n], n * sizeof(i64))
    memcpy(&a[j * n], tmp, n * sizeof(i64))


def row_hnf(rows, Py_ssize_t ncols, bint transform):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = ncols
    cdef Py_ssize_t i, j, k, r, best
    cdef i64 x, p, q, best_abs
    cdef bint found, clean
    cdef i64 *h = load(rows, m, n)
    cdef i64 *u = NULL
    cdef i64 *tmp = <i64 *> malloc((m + n + 1) * sizeof(i64))
    pivots = []
    try:
        if tmp == NULL:
            raise MemoryError()
        if transform:
            u = <i64 *> malloc((m * m + 1) * sizeof(i64))
            if u == NULL:
                raise MemoryError()
            for i in range(m):
                for k in range(m):
                    u[i * m + k] = 1 if i == k else 0
        r = 0
        for j in range(n):
            if r == m:
                break
            found = False
            while True:
                best = -1
                best_abs = 0
                for i in range(r, m):
                    x = h[i * n + j]
                    if x != 0 and (best < 0 or iabs(x) < best_abs):
                        best = i
                        best_abs = iabs(x)
                if best < 0:
                    break
                found = True
                if best != r:
                    swaprows(h, n, r, best, tmp)
                    if u != NULL:
                        swaprows(u, m, r, best, tmp)
                p = h[r * n + j]
                clean = True
                for i in range(r + 1, m):
                    x = h[i * n + j]
                    if x == 0:
                        continue
                    q = floordiv(x, p)
                    axpy(&h[i * n], &h[r * n], q, j, n)
                    if u != NULL:
                        axpy(&u[i * m], &u[r * m], q, 0, m)
                    if h[i * n + j] != 0:
                        clean = False
                if clean:
                    break
            if not found:
                continue
            if h[r * n + j] < 0:
                for k in range(n):
                    h[r * n + k] = -h[r * n + k]
                if u != NULL:
                    for k in range(m):
                        u[r * m + k] = -u[r * m + k]
            p = h[r * n + j]
            for i in range(r):
                q = floordiv(h[i * n + j], p)
                if q != 0:
                    axpy(&h[i * n], &h[r * n], q, j, n)
                    if u != NULL:
                        axpy(&u[i * m], &u[r * m], q, 0, m)
            pivots.append(j)
            r += 1
        return dump(h, m, n), (dump(u, m, m) if u != NULL else None), pivots
    finally:
        free(h)
        free(tmp)
        if u != NULL:
            free(u)


def smith_invariants(rows, Py_ssize_t ncols):
    rows = [r for r in rows if any(r)]
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = ncols
    cdef Py_ssize_t i, j, k, t, bi, bj, bad
    cdef i64 x, p, q, best
    cdef bint dirty
    cdef i64 *a = load(rows, m, n)
    cdef i64 *tmp = <i64 *> malloc((n + 1) * sizeof(i64))
    out = []
    try:
        if tmp == NULL:
            raise MemoryError()
        t = 0
        while t < m and t < n:
            bi = -1
            bj = -1
            best = 0
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i * n + j]
                    if x != 0 and (bi < 0 or iabs(x) < best):
                        bi = i
                        bj = j
                        best = iabs(x)
            if bi < 0:
                break
            if bi != t:
                swaprows(a, n, t, bi, tmp)
            if bj != t:
                for i in range(m):
                    x = a[i * n + t]
                    a[i * n + t] = a[i * n + bj]
                    a[i * n + bj] = x
            while True:
                p = a[t * n + t]
                dirty = False
                for i in range(t + 1, m):
                    x = a[i * n + t]
                    if x != 0:
                        q = floordiv(x, p)
                        axpy(&a[i * n], &a[t * n], q, t, n)
                        if a[i * n + t] != 0:
                            dirty = True
                for j in range(t + 1, n):
                    x = a[t * n + j]
                    if x != 0:
                        q = floordiv(x, p)
                        for i in range(t, m):
                            if a[i * n + t] == 0:
                                continue
                            if fl_mul(q, a[i * n + t], &x) or fl_sub(a[i * n + j], x, &a[i * n + j]) \
                                    or iabs(a[i * n + j]) >= LIMIT:
                                raise OverflowError("int64 kernel overflow")
                        if a[t * n + j] != 0:
                            dirty = True
                if not dirty:
                    bad = -1
                    for i in range(t + 1, m):
                        for k in range(t + 1, n):
                            if a[i * n + k] % p != 0:
                                bad = i
                                break
                        if bad >= 0:
                            break
                    if bad < 0:
                        break
                    addrow(&a[t * n], &a[bad * n], t, n)
                bi = t
                bj = t
                best = iabs(a[t * n + t])
                for i in range(t + 1, m):
                    x = a[i * n + t]
                    if x != 0 and iabs(x) < best:
                        bi = i
                        bj = t
                        best = iabs(x)
                for j in range(t + 1, n):
                    x = a[t * n + j]
                    if x != 0 and iabs(x) < best:
                        bi = t
                        bj = j
                        best = iabs(x)
                if bi != t:
                    swaprows(a, n, t, bi, tmp)
                if bj != t:
                    for i in range(m):
                        x = a[i * n + t]
                        a[i * n + t] = a[i * n + bj]
                        a[i * n + bj] = x
            out.append(iabs(a[t * n + t]))
            t += 1
        return out
    finally:
        free(a)
        free(tmp)
