# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; a drop-in replacement for :mod:`digitop._pure`.

Same algorithms, identical outputs: the canonical key is the
lexicographically least adjacency bit string over the refinement search
leaves, and refinement, twin collapse, and branch order mirror the pure
module step for step.  Adjacency rows are machine words here, which caps the
point count at 62; callers stay below that via the graph6 ceiling.

All working storage is module-level static arrays.  The kernels never
release the GIL or call back into Python mid-search, so the shared scratch
is safe under CPython threading; process pools get fresh copies anyway.
"""

from libc.stdint cimport uint8_t, uint64_t

__all__ = [
    "canonical_rows",
    "classify_flags",
    "min_image_nonsurjective",
    "lattice_rows",
]

cdef enum:
    MAXN = 62
    POOL = 64  # refinement depths: one individualization per level, plus slack


cdef inline int _ctz(uint64_t x):
    cdef int c = 0
    if not (x & 0xFFFFFFFFu):
        x >>= 32
        c += 32
    if not (x & 0xFFFFu):
        x >>= 16
        c += 16
    if not (x & 0xFFu):
        x >>= 8
        c += 8
    if not (x & 0xFu):
        x >>= 4
        c += 4
    if not (x & 0x3u):
        x >>= 2
        c += 2
    if not (x & 0x1u):
        c += 1
    return c


cdef uint64_t _rows[MAXN]
cdef int _cn  # point count of the problem currently loaded


cdef int _load(int n, rows) except -1:
    global _cn
    if n < 1 or n > MAXN:
        raise ValueError(f"point count {n} outside 1..{MAXN}")
    cdef int i
    for i in range(n):
        _rows[i] = rows[i]
    _cn = n
    return 0


# ---------------------------------------------------------------------------
# Canonical labeling: individualization-refinement search
#
# A partition at depth d is pool_elems[d] (vertices in cell order) plus
# pool_starts[d] (cell boundaries, ncells+1 entries).  Children are written
# at depth d+1, so a parent's partition survives its branch loop.

cdef int _pool_elems[POOL][MAXN]
cdef int _pool_starts[POOL][MAXN + 1]
cdef int _pool_ncells[POOL]

cdef int _color[MAXN]
cdef uint8_t _sigs[MAXN][MAXN]
cdef int _siglen[MAXN]
cdef int _new_starts[MAXN + 1]

cdef uint64_t _best_key[MAXN]
cdef int _best_order[MAXN]
cdef bint _have_best

cdef int _position[MAXN]
cdef uint64_t _leaf[MAXN]


cdef inline int _sig_cmp(int a, int b):
    """Lexicographic comparison of two sorted neighbor-color signatures
    (element-wise, shorter-prefix first), matching bytes comparison."""
    cdef int la = _siglen[a], lb = _siglen[b]
    cdef int m = la if la < lb else lb
    cdef int i
    for i in range(m):
        if _sigs[a][i] != _sigs[b][i]:
            return -1 if _sigs[a][i] < _sigs[b][i] else 1
    if la == lb:
        return 0
    return -1 if la < lb else 1


cdef void _refine(int d):
    """Equitable refinement in place at depth d.

    Each pass recolors by cell index, then splits every cell by a stable
    sort of its members keyed by sorted-neighbor-color signature; sub-cells
    therefore come out in signature order with original member order inside,
    the same result as grouping and emitting groups sorted by signature.
    """
    cdef int* elems = &_pool_elems[d][0]
    cdef int* starts = &_pool_starts[d][0]
    cdef int ncells = _pool_ncells[d]
    cdef int c, k, v, u, i, m, begin, end, new_ncells, cu
    cdef uint64_t nb
    while True:
        for c in range(ncells):
            for k in range(starts[c], starts[c + 1]):
                _color[elems[k]] = c
        new_ncells = 0
        for c in range(ncells):
            begin = starts[c]
            end = starts[c + 1]
            _new_starts[new_ncells] = begin
            new_ncells += 1
            if end - begin == 1:
                continue
            for k in range(begin, end):
                v = elems[k]
                m = 0
                nb = _rows[v]
                while nb:
                    u = _ctz(nb)
                    nb &= nb - 1
                    cu = _color[u]
                    i = m
                    while i > 0 and _sigs[v][i - 1] > <uint8_t>cu:
                        _sigs[v][i] = _sigs[v][i - 1]
                        i -= 1
                    _sigs[v][i] = <uint8_t>cu
                    m += 1
                _siglen[v] = m
            for k in range(begin + 1, end):
                v = elems[k]
                i = k
                while i > begin and _sig_cmp(elems[i - 1], v) > 0:
                    elems[i] = elems[i - 1]
                    i -= 1
                elems[i] = v
            for k in range(begin + 1, end):
                if _sig_cmp(elems[k - 1], elems[k]) != 0:
                    _new_starts[new_ncells] = k
                    new_ncells += 1
        if new_ncells == ncells:
            return
        for i in range(new_ncells):
            starts[i] = _new_starts[i]
        starts[new_ncells] = _cn
        ncells = new_ncells
        _pool_ncells[d] = ncells


cdef bint _is_twin_cell(int* elems, int begin, int end):
    cdef uint64_t cell_mask = 0
    cdef int k, v
    for k in range(begin, end):
        cell_mask |= (<uint64_t>1) << elems[k]
    cdef int v0 = elems[begin]
    cdef uint64_t outside = _rows[v0] & ~cell_mask
    cdef uint64_t inside0 = _rows[v0] & cell_mask
    cdef bint all_adjacent = inside0 == (cell_mask ^ ((<uint64_t>1) << v0))
    if not all_adjacent and inside0 != 0:
        return False
    for k in range(begin + 1, end):
        v = elems[k]
        if (_rows[v] & ~cell_mask) != outside:
            return False
        if all_adjacent:
            if (_rows[v] & cell_mask) != (cell_mask ^ ((<uint64_t>1) << v)):
                return False
        elif (_rows[v] & cell_mask) != 0:
            return False
    return True


cdef void _try_leaf(int* order):
    """Compare this leaf's adjacency bit string against the best; keep the
    first strict minimum.  Greater-than prefixes abandon early, which never
    changes the minimum."""
    global _have_best
    cdef int n = _cn
    cdef int j, u
    cdef uint64_t r, nb
    cdef bint less = False
    for j in range(n):
        _position[order[j]] = j
    for j in range(n):
        nb = _rows[order[j]]
        r = 0
        while nb:
            u = _ctz(nb)
            nb &= nb - 1
            r |= (<uint64_t>1) << (n - 1 - _position[u])
        _leaf[j] = r
        if _have_best and not less:
            if r > _best_key[j]:
                return
            if r < _best_key[j]:
                less = True
    if _have_best and not less:
        return
    for j in range(n):
        _best_key[j] = _leaf[j]
        _best_order[j] = order[j]
    _have_best = True


cdef void _copy_individualize(int d, int target, int pick):
    """Child partition: the picked member becomes a singleton ahead of the
    rest of its cell, which keeps its original order."""
    cdef int* src_e = &_pool_elems[d][0]
    cdef int* src_s = &_pool_starts[d][0]
    cdef int* dst_e = &_pool_elems[d + 1][0]
    cdef int* dst_s = &_pool_starts[d + 1][0]
    cdef int ncells = _pool_ncells[d]
    cdef int begin = src_s[target]
    cdef int i, k, w
    for i in range(_cn):
        dst_e[i] = src_e[i]
    w = src_e[pick]
    k = pick
    while k > begin:
        dst_e[k] = dst_e[k - 1]
        k -= 1
    dst_e[begin] = w
    for i in range(target + 1):
        dst_s[i] = src_s[i]
    dst_s[target + 1] = begin + 1
    for i in range(target + 1, ncells + 1):
        dst_s[i + 1] = src_s[i]
    _pool_ncells[d + 1] = ncells + 1


cdef void _copy_split_all(int d, int target):
    """Child partition with the target cell exploded into singletons in its
    current member order (valid only for twin cells)."""
    cdef int* src_e = &_pool_elems[d][0]
    cdef int* src_s = &_pool_starts[d][0]
    cdef int* dst_e = &_pool_elems[d + 1][0]
    cdef int* dst_s = &_pool_starts[d + 1][0]
    cdef int ncells = _pool_ncells[d]
    cdef int begin = src_s[target]
    cdef int end = src_s[target + 1]
    cdef int extra = end - begin - 1
    cdef int i
    for i in range(_cn):
        dst_e[i] = src_e[i]
    for i in range(target + 1):
        dst_s[i] = src_s[i]
    for i in range(1, end - begin):
        dst_s[target + i] = begin + i
    for i in range(target + 1, ncells + 1):
        dst_s[i + extra] = src_s[i]
    _pool_ncells[d + 1] = ncells + extra


cdef void _search(int d):
    _refine(d)
    cdef int* elems = &_pool_elems[d][0]
    cdef int* starts = &_pool_starts[d][0]
    cdef int ncells = _pool_ncells[d]
    cdef int target = -1
    cdef int c, k, begin, end
    for c in range(ncells):
        if starts[c + 1] - starts[c] > 1:
            target = c
            break
    if target < 0:
        _try_leaf(elems)
        return
    begin = starts[target]
    end = starts[target + 1]
    if _is_twin_cell(elems, begin, end):
        _copy_split_all(d, target)
        _search(d + 1)
        return
    for k in range(begin, end):
        _copy_individualize(d, target, k)
        _search(d + 1)


def canonical_rows(n, rows):
    """Canonically relabeled adjacency rows; see the pure module."""
    cdef int cn = n
    if cn == 1:
        return (0,)
    _load(cn, rows)
    global _have_best
    _have_best = False
    cdef int i, j, u
    cdef uint64_t nb, r
    for i in range(cn):
        _pool_elems[0][i] = i
    _pool_starts[0][0] = 0
    _pool_starts[0][1] = cn
    _pool_ncells[0] = 1
    _search(0)
    for j in range(cn):
        _position[_best_order[j]] = j
    out = []
    for j in range(cn):
        nb = _rows[_best_order[j]]
        r = 0
        while nb:
            u = _ctz(nb)
            nb &= nb - 1
            r |= (<uint64_t>1) << _position[u]
        out.append(r)
    return tuple(out)


# ---------------------------------------------------------------------------
# One-step self-map search

cdef int _order[MAXN]
cdef int _cand[MAXN][MAXN]
cdef int _cand_len[MAXN]
cdef int _earl[MAXN][MAXN]
cdef int _earl_len[MAXN]
cdef int _value[MAXN]
cdef int _hits[MAXN]

cdef bint _fl_reducible, _fl_pointed, _fl_non_identity
cdef int _fl_covered, _fl_fixed

cdef int _mi_best[MAXN]
cdef int _mi_tmp[MAXN]
cdef int _mi_best_len
cdef bint _mi_have
cdef int _mi_covered


cdef int _prepare_maps(int n) except -1:
    """BFS assignment order from label 0, closed-neighborhood candidate
    lists (ascending), and per-position already-assigned neighbors."""
    cdef uint64_t visited = 1, fresh, nb
    cdef int head = 0, count = 1, v, u, pos, x, k, m
    _order[0] = 0
    while head < count:
        v = _order[head]
        head += 1
        fresh = _rows[v] & ~visited
        visited |= fresh
        while fresh:
            u = _ctz(fresh)
            fresh &= fresh - 1
            _order[count] = u
            count += 1
    if count != n:
        raise ValueError("adjacency graph is disconnected")
    for pos in range(n):
        x = _order[pos]
        nb = _rows[x] | ((<uint64_t>1) << x)
        m = 0
        while nb:
            u = _ctz(nb)
            nb &= nb - 1
            _cand[pos][m] = u
            m += 1
        _cand_len[pos] = m
        m = 0
        for k in range(pos):
            u = _order[k]
            if (_rows[x] >> u) & 1:
                _earl[pos][m] = u
                m += 1
        _earl_len[pos] = m
        _value[pos] = 0
        _hits[pos] = 0
    return 0


cdef bint _fl_walk(int pos):
    global _fl_reducible, _fl_pointed, _fl_non_identity, _fl_covered, _fl_fixed
    cdef int x, v, fu, i, k
    cdef uint64_t row_v
    cdef bint ok
    if pos == _cn:
        if _fl_covered < _cn:
            _fl_reducible = True
            if _fl_fixed > 0:
                _fl_pointed = True
        if _fl_fixed < _cn:
            _fl_non_identity = True
        return _fl_pointed and _fl_non_identity
    x = _order[pos]
    for i in range(_cand_len[pos]):
        v = _cand[pos][i]
        row_v = _rows[v]
        ok = True
        for k in range(_earl_len[pos]):
            fu = _value[_earl[pos][k]]
            if v != fu and not ((row_v >> fu) & 1):
                ok = False
                break
        if not ok:
            continue
        _value[x] = v
        _hits[v] += 1
        if _hits[v] == 1:
            _fl_covered += 1
        if v == x:
            _fl_fixed += 1
        if _fl_walk(pos + 1):
            return True
        _hits[v] -= 1
        if _hits[v] == 0:
            _fl_covered -= 1
        if v == x:
            _fl_fixed -= 1
    return False


def classify_flags(n, rows):
    """(reducible, pointed_reducible, rigid); see the pure module."""
    global _fl_reducible, _fl_pointed, _fl_non_identity, _fl_covered, _fl_fixed
    cdef int cn = n
    _load(cn, rows)
    _prepare_maps(cn)
    _fl_reducible = False
    _fl_pointed = False
    _fl_non_identity = False
    _fl_covered = 0
    _fl_fixed = 0
    _fl_walk(0)
    return bool(_fl_reducible), bool(_fl_pointed), bool(not _fl_non_identity)


cdef void _mi_walk(int pos):
    global _mi_covered, _mi_have, _mi_best_len
    cdef int x, v, fu, i, k, m
    cdef uint64_t row_v
    cdef bint ok, less
    if pos == _cn:
        if _mi_covered < _cn:
            m = 0
            for v in range(_cn):
                if _hits[v]:
                    _mi_tmp[m] = v
                    m += 1
            less = not _mi_have
            if not less:
                for i in range(m if m < _mi_best_len else _mi_best_len):
                    if _mi_tmp[i] != _mi_best[i]:
                        less = _mi_tmp[i] < _mi_best[i]
                        break
                else:
                    less = m < _mi_best_len
            if less:
                for i in range(m):
                    _mi_best[i] = _mi_tmp[i]
                _mi_best_len = m
                _mi_have = True
        return
    x = _order[pos]
    for i in range(_cand_len[pos]):
        v = _cand[pos][i]
        row_v = _rows[v]
        ok = True
        for k in range(_earl_len[pos]):
            fu = _value[_earl[pos][k]]
            if v != fu and not ((row_v >> fu) & 1):
                ok = False
                break
        if not ok:
            continue
        _value[x] = v
        _hits[v] += 1
        if _hits[v] == 1:
            _mi_covered += 1
        _mi_walk(pos + 1)
        _hits[v] -= 1
        if _hits[v] == 0:
            _mi_covered -= 1


def min_image_nonsurjective(n, rows):
    """Least non-surjective one-step image set, or None; see the pure module."""
    global _mi_have, _mi_best_len, _mi_covered
    cdef int cn = n
    _load(cn, rows)
    _prepare_maps(cn)
    _mi_have = False
    _mi_best_len = 0
    _mi_covered = 0
    _mi_walk(0)
    if not _mi_have:
        return None
    cdef int i
    return tuple(_mi_best[i] for i in range(_mi_best_len))


# ---------------------------------------------------------------------------
# Lattice adjacency

cdef int _lx[MAXN]
cdef int _ly[MAXN]


def lattice_rows(kind, cells):
    """Adjacency rows induced on grid cells; see the pure module."""
    cdef int n = len(cells)
    cdef int ck = kind
    if n > MAXN:
        raise ValueError(f"cell count {n} outside 1..{MAXN}")
    cdef int i, j, dx, dy
    cdef uint64_t out[MAXN]
    for i in range(n):
        _lx[i] = cells[i][0]
        _ly[i] = cells[i][1]
        out[i] = 0
    cdef bint adjacent
    for i in range(n):
        for j in range(i + 1, n):
            dx = _lx[i] - _lx[j]
            dy = _ly[i] - _ly[j]
            if ck == 4:
                adjacent = dx * dx + dy * dy == 1
            else:
                adjacent = -1 <= dx <= 1 and -1 <= dy <= 1
            if adjacent:
                out[i] |= (<uint64_t>1) << j
                out[j] |= (<uint64_t>1) << i
    return [out[i] for i in range(n)]
