# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same API and semantics as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport log2, sqrt
from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc

from . import _kernels_py

cnp.import_array()

BACKEND = "cython"

# bound on log2 of any minor for which int64 Bareiss cannot overflow
cdef double SAFE_LOG2_MINOR = 30.0

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount(unsigned long long x) noexcept nogil:
    return __builtin_popcountll(x)


cdef Py_ssize_t _rank_mod_p_ptr(int64_t *m, Py_ssize_t nrows, Py_ssize_t ncols,
                                int64_t p) noexcept nogil:
    cdef Py_ssize_t rank = 0, col, r, c, piv
    cdef int64_t inv, f, base, e, x
    cdef int64_t *top
    cdef int64_t *row
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if m[r * ncols + col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        top = m + rank * ncols
        if piv != rank:
            row = m + piv * ncols
            for c in range(col, ncols):
                x = top[c]
                top[c] = row[c]
                row[c] = x
        # inverse by Fermat
        inv = 1
        base = top[col]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for r in range(rank + 1, nrows):
            row = m + r * ncols
            f = row[col]
            if f != 0:
                f = f * inv % p
                for c in range(col, ncols):
                    row[c] = (row[c] - f * top[c]) % p
                    if row[c] < 0:
                        row[c] += p
        rank += 1
    return rank


cdef Py_ssize_t _rank_bareiss_ptr(int64_t *m, Py_ssize_t nrows,
                                  Py_ssize_t ncols) noexcept nogil:
    cdef Py_ssize_t rank = 0, col, r, c, piv
    cdef int64_t prev = 1, pv, f, x
    cdef int64_t *top
    cdef int64_t *row
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if m[r * ncols + col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        top = m + rank * ncols
        if piv != rank:
            row = m + piv * ncols
            for c in range(col, ncols):
                x = top[c]
                top[c] = row[c]
                row[c] = x
        pv = top[col]
        for r in range(rank + 1, nrows):
            row = m + r * ncols
            f = row[col]
            for c in range(col + 1, ncols):
                row[c] = (row[c] * pv - f * top[c]) // prev
            row[col] = 0
        prev = pv
        rank += 1
    return rank


cdef Py_ssize_t _rank_mod_p(int64_t[:, ::1] m, int64_t p) noexcept nogil:
    return _rank_mod_p_ptr(&m[0, 0], m.shape[0], m.shape[1], p)


cdef Py_ssize_t _rank_bareiss(int64_t[:, ::1] m) noexcept nogil:
    return _rank_bareiss_ptr(&m[0, 0], m.shape[0], m.shape[1])


cdef double _log2_hadamard(int64_t[:, ::1] m):
    # log2 of the product of the column norms, an upper bound for every minor
    cdef Py_ssize_t r, c
    cdef double total = 0.0, s
    for c in range(m.shape[1]):
        s = 0.0
        for r in range(m.shape[0]):
            s += <double>m[r, c] * <double>m[r, c]
        if s > 1.0:
            total += 0.5 * log2(s)
    return total


def rank_mod_p(rows, p):
    arr = np.array(rows, dtype=np.int64, ndmin=2)
    if arr.size == 0:
        return 0
    arr = np.ascontiguousarray(arr % p)
    return int(_rank_mod_p(arr, p))


def rank_integer(rows):
    arr = np.array(rows, dtype=object, ndmin=2)
    if arr.size == 0:
        return 0
    try:
        m = np.ascontiguousarray(arr.astype(np.int64))
    except OverflowError:
        return _kernels_py.rank_integer(rows)
    if _log2_hadamard(m) > SAFE_LOG2_MINOR:
        return _kernels_py.rank_integer(rows)
    return int(_rank_bareiss(m))


def lcm_lattice(gens, max_subsets=1 << 20, method=None):
    cdef int64_t[:, ::1] G = np.ascontiguousarray(np.array(gens, dtype=np.int64, ndmin=2))
    cdef Py_ssize_t g = G.shape[0], n = G.shape[1]
    if g == 0 or len(gens) == 0:
        return []
    top = np.asarray(G).max(axis=0)
    box = 1
    for t in top:
        box *= int(t) + 1
    cdef Py_ssize_t mask, low, j, rest, i, total
    cdef int64_t[:, ::1] L
    if _kernels_py._use_subsets(g, box, max_subsets, method):
        total = 1 << g
        L_arr = np.zeros((total, n), dtype=np.int64)
        L = L_arr
        for mask in range(1, total):
            low = mask & -mask
            j = 0
            while (low >> j) != 1:
                j += 1
            rest = mask ^ low
            for i in range(n):
                if rest and L[rest, i] > G[j, i]:
                    L[mask, i] = L[rest, i]
                else:
                    L[mask, i] = G[j, i]
        # mixed-radix codes sort like the rows themselves
        radix = [int(t) + 1 for t in top]
        if box < (1 << 62):
            weights = np.ones(n, dtype=np.int64)
            for i in range(n - 2, -1, -1):
                weights[i] = weights[i + 1] * radix[i + 1]
            codes = np.unique(L_arr[1:] @ weights)
            out = []
            for code in codes.tolist():
                row = [0] * n
                for i in range(n - 1, -1, -1):
                    row[i] = code % radix[i]
                    code //= radix[i]
                out.append(tuple(row))
            return out
        return sorted(set(map(tuple, L_arr[1:].tolist())))
    return _box_lattice(G, top)


cdef list _box_lattice(int64_t[:, ::1] G, top):
    cdef Py_ssize_t g = G.shape[0], n = G.shape[1], i, k, idx, count
    cdef int64_t[::1] a = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] acc = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] lim = np.ascontiguousarray(np.asarray(top, dtype=np.int64))
    cdef bint ok, any_div, done = False
    out = []
    while not done:
        any_div = False
        for i in range(n):
            acc[i] = 0
        for k in range(g):
            ok = True
            for i in range(n):
                if G[k, i] > a[i]:
                    ok = False
                    break
            if ok:
                any_div = True
                for i in range(n):
                    if G[k, i] > acc[i]:
                        acc[i] = G[k, i]
        if any_div:
            ok = True
            for i in range(n):
                if acc[i] != a[i]:
                    ok = False
                    break
            if ok:
                out.append(tuple([int(a[i]) for i in range(n)]))
        # odometer increment, last coordinate fastest
        idx = n - 1
        while idx >= 0:
            if a[idx] < lim[idx]:
                a[idx] += 1
                break
            a[idx] = 0
            idx -= 1
        if idx < 0:
            done = True
    return sorted(out)


cdef object _koszul_faces(int64_t[:, ::1] G, int64_t[::1] A, list facets):
    """Fill ``facets`` with facet bitmasks of the upper Koszul complex at A.

    Returns (k, shortcut) where shortcut is the homology vector when it is
    known without any linear algebra, else None.
    """
    cdef Py_ssize_t n = A.shape[0], g = G.shape[0], i, k = 0, t, bit
    cdef int support[64]
    for i in range(n):
        if A[i] > 0:
            support[k] = i
            k += 1
    cdef unsigned long long full = (1ULL << k) - 1
    cdef unsigned long long fm
    cdef bint divides
    for t in range(g):
        divides = True
        for i in range(n):
            if G[t, i] > A[i]:
                divides = False
                break
        if not divides:
            continue
        fm = 0
        for bit in range(k):
            if G[t, support[bit]] < A[support[bit]]:
                fm |= 1ULL << bit
        if fm == full:
            # a full simplex is acyclic; with no vertices it is {empty}
            return k, ([0] * (k + 1) if k else [1])
        facets.append(fm)
    if not facets:
        return k, [0] * (k + 1)
    return k, None


def koszul_homology(gens, a, p):
    return koszul_batch(gens, [a], [p])[0][0]


def koszul_batch(gens, points, chars):
    """``koszul_homology`` for every point and every characteristic in ``chars``."""
    if len(points) == 0:
        return []
    cdef int64_t[:, ::1] G = np.ascontiguousarray(np.array(gens, dtype=np.int64, ndmin=2))
    cdef int64_t[:, ::1] P = np.ascontiguousarray(np.array(points, dtype=np.int64, ndmin=2))
    if P.shape[1] > 64:
        return _kernels_py.koszul_batch(gens, points, chars)
    cdef Py_ssize_t j
    cdef list facets
    out = []
    for j in range(P.shape[0]):
        facets = []
        k, shortcut = _koszul_faces(G, P[j], facets)
        if shortcut is not None:
            out.append([list(shortcut) for _ in chars])
        else:
            out.append(_complex_homology(k, facets, chars))
    return out


cdef list _complex_homology(Py_ssize_t k, list facets, chars):
    cdef Py_ssize_t nfaces = 1 << k, f, s, c, r, i, nrows, ncols, largest = 0
    cdef unsigned long long fmask, bits, low
    cdef int64_t sign, p, x
    cdef Py_ssize_t counts[65]
    cdef Py_ssize_t starts[66]
    cdef unsigned char *is_face = <unsigned char *> malloc(nfaces)
    cdef int64_t *pos = <int64_t *> malloc(nfaces * sizeof(int64_t))
    cdef int64_t *order = <int64_t *> malloc(nfaces * sizeof(int64_t))
    cdef int64_t *bnd = NULL
    cdef int64_t *work = NULL
    cdef Py_ssize_t *offsets = NULL
    if is_face == NULL or pos == NULL or order == NULL:
        free(is_face)
        free(pos)
        free(order)
        raise MemoryError()
    try:
        for f in range(nfaces):
            is_face[f] = 0
        for fmask in facets:
            bits = fmask
            while True:
                is_face[bits] = 1
                if bits == 0:
                    break
                bits = (bits - 1) & fmask
        # faces grouped by size; pos is the index within the size class
        for s in range(k + 1):
            counts[s] = 0
        for f in range(nfaces):
            if is_face[f]:
                s = popcount(f)
                pos[f] = counts[s]
                counts[s] += 1
        starts[0] = 0
        for s in range(k + 1):
            starts[s + 1] = starts[s] + counts[s]
        for s in range(k + 1):
            counts[s] = 0
        for f in range(nfaces):
            if is_face[f]:
                s = popcount(f)
                order[starts[s] + counts[s]] = f
                counts[s] += 1
        # signed boundary matrices, stored once and copied per field
        offsets = <Py_ssize_t *> malloc((k + 2) * sizeof(Py_ssize_t))
        if offsets == NULL:
            raise MemoryError()
        offsets[0] = 0
        offsets[1] = 0
        for s in range(1, k + 1):
            offsets[s + 1] = offsets[s] + counts[s - 1] * counts[s]
            if counts[s - 1] * counts[s] > largest:
                largest = counts[s - 1] * counts[s]
        bnd = <int64_t *> malloc((offsets[k + 1] + 1) * sizeof(int64_t))
        work = <int64_t *> malloc((largest + 1) * sizeof(int64_t))
        if bnd == NULL or work == NULL:
            raise MemoryError()
        for i in range(offsets[k + 1]):
            bnd[i] = 0
        for s in range(1, k + 1):
            ncols = counts[s]
            for c in range(ncols):
                fmask = order[starts[s] + c]
                sign = 1
                bits = fmask
                while bits:
                    low = bits & (~bits + 1)
                    r = pos[fmask ^ low]
                    bnd[offsets[s] + r * ncols + c] = sign
                    sign = -sign
                    bits ^= low
        results = []
        for p in chars:
            ranks = [0] * (k + 2)
            for s in range(1, k + 1):
                nrows = counts[s - 1]
                ncols = counts[s]
                if nrows == 0 or ncols == 0:
                    continue
                if p:
                    for i in range(nrows * ncols):
                        x = bnd[offsets[s] + i]
                        work[i] = x + p if x < 0 else x
                    ranks[s] = _rank_mod_p_ptr(work, nrows, ncols, p)
                elif 0.5 * log2(<double>s) * min(nrows, ncols) > SAFE_LOG2_MINOR:
                    # boundary columns hold s entries of +-1
                    mat = [[bnd[offsets[s] + r * ncols + c] for c in range(ncols)]
                           for r in range(nrows)]
                    ranks[s] = _kernels_py.rank_integer(mat)
                else:
                    for i in range(nrows * ncols):
                        work[i] = bnd[offsets[s] + i]
                    ranks[s] = _rank_bareiss_ptr(work, nrows, ncols)
            results.append([counts[s] - ranks[s] - ranks[s + 1] for s in range(k + 1)])
        return results
    finally:
        free(is_face)
        free(pos)
        free(order)
        free(offsets)
        free(bnd)
        free(work)
