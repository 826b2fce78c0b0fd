"""Pure-Python hot kernels.

Reference implementation for :mod:`monoreg._kernels` (Cython).  Both modules
expose the same functions with the same semantics:

``rank_mod_p(rows, p)``
    rank of an integer matrix over GF(p).
``rank_integer(rows)``
    rank over Q by fraction-free (Bareiss) elimination.
``lcm_lattice(gens, max_subsets, method)``
    sorted distinct lcms of nonempty subsets of ``gens``, by subset
    enumeration or by scanning the box under the total lcm, whichever is
    smaller (``method`` forces one: "subsets" or "box").
``koszul_homology(gens, a, p)``
    reduced homology dimensions of the upper Koszul complex of the ideal
    generated by ``gens`` at multidegree ``a``; ``p == 0`` means Q.
"""
from __future__ import annotations

from itertools import product as _cartesian

BACKEND = "python"


def rank_mod_p(rows, p):
    m = [[x % p for x in row] for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[col], p - 2, p)
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            if f:
                f = f * inv % p
                for c in range(col, ncols):
                    row[c] = (row[c] - f * prow[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_integer(rows):
    m = [list(row) for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        pv = prow[col]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            for c in range(col + 1, ncols):
                # exact: every entry stays a minor of the input
                row[c] = (row[c] * pv - f * prow[c]) // prev
            row[col] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def _use_subsets(g, box, max_subsets, method):
    if method is not None:
        return method == "subsets"
    return (1 << g) <= min(box, max_subsets) or box > max_subsets


def lcm_lattice(gens, max_subsets=1 << 20, method=None):
    gens = [tuple(g) for g in gens]
    g = len(gens)
    if g == 0:
        return []
    top = tuple(max(col) for col in zip(*gens))
    box = 1
    for t in top:
        box *= t + 1
    if _use_subsets(g, box, max_subsets, method):
        lcms = [None] * (1 << g)
        out = set()
        for mask in range(1, 1 << g):
            low = mask & -mask
            j = low.bit_length() - 1
            rest = mask ^ low
            gj = gens[j]
            if rest:
                prev = lcms[rest]
                cur = tuple(x if x > y else y for x, y in zip(prev, gj))
            else:
                cur = gj
            lcms[mask] = cur
            out.add(cur)
        return sorted(out)
    # scan the box: a is an lcm iff it is the lcm of the gens dividing x^a
    out = []
    for a in _cartesian(*(range(t + 1) for t in top)):
        acc = None
        for gen in gens:
            if all(x <= y for x, y in zip(gen, a)):
                acc = gen if acc is None else tuple(
                    x if x > y else y for x, y in zip(acc, gen))
        if acc is not None and acc == a:
            out.append(a)
    return sorted(out)


def _facet_masks(gens, a):
    support = [i for i, e in enumerate(a) if e]
    facets = []
    for gen in gens:
        if any(x > y for x, y in zip(gen, a)):
            continue
        mask = 0
        for bit, i in enumerate(support):
            if gen[i] < a[i]:
                mask |= 1 << bit
        facets.append(mask)
    return len(support), facets


def complex_homology(k, faces, p):
    """Reduced homology of a subset-closed family of bitmask faces on k vertices.

    Returns dims indexed so that ``dims[d + 1]`` is the dimension of the
    reduced homology in degree ``d`` (d from -1 to k - 1).
    """
    by_size = [[] for _ in range(k + 1)]
    for f in sorted(faces):
        by_size[bin(f).count("1")].append(f)
    ranks = [0] * (k + 2)  # ranks[s]: rank of boundary from size-s faces
    rank = rank_mod_p if p else rank_integer
    for s in range(1, k + 1):
        cols = by_size[s]
        rows = by_size[s - 1]
        if not cols or not rows:
            continue
        index = {f: r for r, f in enumerate(rows)}
        mat = [[0] * len(cols) for _ in rows]
        for c, f in enumerate(cols):
            sign = 1
            bits = f
            while bits:
                low = bits & -bits
                mat[index[f ^ low]][c] = sign if p == 0 else sign % p
                sign = -sign
                bits ^= low
        ranks[s] = rank(mat, p) if p else rank(mat)
    return [len(by_size[s]) - ranks[s] - ranks[s + 1] for s in range(k + 1)]


def _koszul_faces(gens, a):
    """Faces of the upper Koszul complex at ``a`` as bitmasks on its support.

    Returns ``(k, faces, shortcut)``; when ``shortcut`` is not None it is the
    homology vector, the same for every field.
    """
    a = tuple(a)
    k, facets = _facet_masks(gens, a)
    if not facets:
        return k, None, [0] * (k + 1)
    full = (1 << k) - 1
    if full in facets:
        # a full simplex is acyclic; with no vertices it is {empty}
        return k, None, [0] * (k + 1) if k else [1]
    faces = set()
    for fm in facets:
        sub = fm
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & fm
    return k, faces, None


def koszul_homology(gens, a, p):
    k, faces, shortcut = _koszul_faces(gens, a)
    if shortcut is not None:
        return shortcut
    return complex_homology(k, faces, p)


def koszul_batch(gens, points, chars):
    """``koszul_homology`` for every point and every characteristic in ``chars``.

    Result ``[j][c]`` belongs to ``points[j]`` and ``chars[c]``.
    """
    gens = [tuple(g) for g in gens]
    out = []
    for a in points:
        k, faces, shortcut = _koszul_faces(gens, a)
        if shortcut is not None:
            out.append([list(shortcut) for _ in chars])
        else:
            out.append([complex_homology(k, faces, p) for p in chars])
    return out
