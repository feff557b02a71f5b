# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
# cython: initializedcheck=False
"""Compiled kernels: grid-sum minimisation and disjointness search.

Mirror of ``weakcross._kernels_py`` with the identical traversal order,
tie-breaking, and node accounting, so either backend produces the same
answers (and the same node counts) on the same input.  Keep the two
files in lockstep.
"""

from libc.stdlib cimport malloc, free

BACKEND = "c"

ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    """
    #if defined(_MSC_VER)
    #include <intrin.h>
    static int wc_popcount64(unsigned long long x) { return (int)__popcnt64(x); }
    #else
    static int wc_popcount64(unsigned long long x) { return __builtin_popcountll(x); }
    #endif
    """
    int wc_popcount64(unsigned long long x) nogil


def grid_candidate_key(cand, swap):
    """Comparison key for grid candidates, honouring the caller's orientation."""
    value, enum_idx, other_idx = cand
    if swap:
        return (value, other_idx, enum_idx)
    return (value, enum_idx, other_idx)


# ---------------------------------------------------------------------------
# grid-sum minimisation
# ---------------------------------------------------------------------------

cdef struct GridState:
    i64 *mat
    i64 *level          # (ell + 1) * n_cols running partial sums
    int *chosen
    i64 *sel_val
    int *sel_col
    int *tmp_col
    int *best_enum
    int *best_other
    i64 best_val
    bint has_best
    int n_rows
    int n_cols
    int ell
    bint swap


cdef void _grid_leaf(GridState *st) nogil:
    cdef i64 *s = st.level + st.ell * st.n_cols
    cdef int ell = st.ell
    cdef int cnt = 0
    cdef int c, p, i, key, rel
    cdef i64 v, value
    cdef int *p_new
    cdef int *p_best
    cdef int *s_new
    cdef int *s_best
    # ell smallest (value, column) pairs; ties keep the smaller column.
    for c in range(st.n_cols):
        v = s[c]
        if cnt < ell:
            p = cnt
            while p > 0 and st.sel_val[p - 1] > v:
                st.sel_val[p] = st.sel_val[p - 1]
                st.sel_col[p] = st.sel_col[p - 1]
                p -= 1
            st.sel_val[p] = v
            st.sel_col[p] = c
            cnt += 1
        elif v < st.sel_val[ell - 1]:
            p = ell - 1
            while p > 0 and st.sel_val[p - 1] > v:
                st.sel_val[p] = st.sel_val[p - 1]
                st.sel_col[p] = st.sel_col[p - 1]
                p -= 1
            st.sel_val[p] = v
            st.sel_col[p] = c
    value = 0
    for i in range(ell):
        value += st.sel_val[i]
        st.tmp_col[i] = st.sel_col[i]
    for i in range(1, ell):
        key = st.tmp_col[i]
        p = i
        while p > 0 and st.tmp_col[p - 1] > key:
            st.tmp_col[p] = st.tmp_col[p - 1]
            p -= 1
        st.tmp_col[p] = key
    rel = 0
    if not st.has_best:
        rel = -1
    elif value != st.best_val:
        rel = -1 if value < st.best_val else 1
    else:
        if st.swap:
            p_new = st.tmp_col
            p_best = st.best_other
            s_new = st.chosen
            s_best = st.best_enum
        else:
            p_new = st.chosen
            p_best = st.best_enum
            s_new = st.tmp_col
            s_best = st.best_other
        for i in range(ell):
            if p_new[i] != p_best[i]:
                rel = -1 if p_new[i] < p_best[i] else 1
                break
        if rel == 0:
            for i in range(ell):
                if s_new[i] != s_best[i]:
                    rel = -1 if s_new[i] < s_best[i] else 1
                    break
    if rel < 0:
        st.best_val = value
        st.has_best = 1
        for i in range(ell):
            st.best_enum[i] = st.chosen[i]
            st.best_other[i] = st.tmp_col[i]


cdef void _grid_rec(GridState *st, int depth, int start) nogil:
    cdef int r, c
    cdef i64 *cur
    cdef i64 *nxt
    cdef i64 *rowp
    if depth == st.ell:
        _grid_leaf(st)
        return
    cur = st.level + depth * st.n_cols
    nxt = st.level + (depth + 1) * st.n_cols
    for r in range(start, st.n_rows - (st.ell - depth) + 1):
        st.chosen[depth] = r
        rowp = st.mat + r * st.n_cols
        for c in range(st.n_cols):
            nxt[c] = cur[c] + rowp[c]
        _grid_rec(st, depth + 1, r + 1)


def min_grid_sum_bucket(flat, int n_rows, int n_cols, int ell, bint swap,
                        int first_lo, int first_hi):
    """Best grid candidate whose least enumerated row lies in [first_lo, first_hi).

    Same contract as the pure Python twin: returns
    ``(value, enum_indices, other_indices)`` or None for an empty bucket.
    """
    if ell <= 0 or n_rows < ell or n_cols < ell:
        return None
    cdef int hi = first_hi
    if hi > n_rows - ell + 1:
        hi = n_rows - ell + 1
    cdef int lo = first_lo
    if lo < 0:
        lo = 0
    if lo >= hi:
        return None
    cdef Py_ssize_t total = (<Py_ssize_t> n_rows) * n_cols
    cdef GridState st
    st.mat = <i64 *> malloc(total * sizeof(i64))
    st.level = <i64 *> malloc((ell + 1) * (<Py_ssize_t> n_cols) * sizeof(i64))
    st.chosen = <int *> malloc(ell * sizeof(int))
    st.sel_val = <i64 *> malloc(ell * sizeof(i64))
    st.sel_col = <int *> malloc(ell * sizeof(int))
    st.tmp_col = <int *> malloc(ell * sizeof(int))
    st.best_enum = <int *> malloc(ell * sizeof(int))
    st.best_other = <int *> malloc(ell * sizeof(int))
    if (st.mat == NULL or st.level == NULL or st.chosen == NULL or
            st.sel_val == NULL or st.sel_col == NULL or st.tmp_col == NULL or
            st.best_enum == NULL or st.best_other == NULL):
        _grid_free(&st)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(total):
        st.mat[i] = flat[i]
    st.n_rows = n_rows
    st.n_cols = n_cols
    st.ell = ell
    st.swap = swap
    st.has_best = 0
    st.best_val = 0
    cdef int first, c
    with nogil:
        for c in range(n_cols):
            st.level[c] = 0
        for first in range(lo, hi):
            st.chosen[0] = first
            for c in range(n_cols):
                st.level[n_cols + c] = st.mat[first * n_cols + c]
            _grid_rec(&st, 1, first + 1)
    try:
        if not st.has_best:
            return None
        return (st.best_val,
                tuple(st.best_enum[i] for i in range(ell)),
                tuple(st.best_other[i] for i in range(ell)))
    finally:
        _grid_free(&st)


cdef void _grid_free(GridState *st):
    free(st.mat)
    free(st.level)
    free(st.chosen)
    free(st.sel_val)
    free(st.sel_col)
    free(st.tmp_col)
    free(st.best_enum)
    free(st.best_other)


# ---------------------------------------------------------------------------
# disjointness search
# ---------------------------------------------------------------------------

cdef struct DisjCtx:
    u64 *masks
    int m
    u64 universe
    int min_size
    int best_size
    int *best_sel
    int *chosen
    int csize


cdef void _md_rec(DisjCtx *c, int i, u64 un) nogil:
    cdef int size = c.csize
    cdef int j, freebits, cap, avail, bound
    if size > c.best_size:
        c.best_size = size
        for j in range(size):
            c.best_sel[j] = c.chosen[j]
    if i == c.m:
        return
    freebits = wc_popcount64(c.universe & ~un)
    cap = freebits // c.min_size if c.min_size else c.m
    avail = 0
    for j in range(i, c.m):
        if (c.masks[j] & un) == 0:
            avail += 1
    bound = cap if cap < avail else avail
    if size + bound <= c.best_size:
        return
    if (c.masks[i] & un) == 0:
        c.chosen[c.csize] = i
        c.csize += 1
        _md_rec(c, i + 1, un | c.masks[i])
        c.csize -= 1
    _md_rec(c, i + 1, un)


def max_disjoint(masks):
    """Largest pairwise-disjoint subset of ``masks``: (size, lex-least indices)."""
    cdef int m = len(masks)
    if m == 0:
        return 0, ()
    cdef DisjCtx ctx
    ctx.masks = <u64 *> malloc(m * sizeof(u64))
    ctx.best_sel = <int *> malloc(m * sizeof(int))
    ctx.chosen = <int *> malloc(m * sizeof(int))
    if ctx.masks == NULL or ctx.best_sel == NULL or ctx.chosen == NULL:
        free(ctx.masks)
        free(ctx.best_sel)
        free(ctx.chosen)
        raise MemoryError()
    cdef int i, pc
    cdef u64 uni = 0
    cdef int msize = 65
    for i in range(m):
        ctx.masks[i] = masks[i]
        uni |= ctx.masks[i]
        pc = wc_popcount64(ctx.masks[i])
        if pc < msize:
            msize = pc
    ctx.m = m
    ctx.universe = uni
    ctx.min_size = msize
    ctx.best_size = -1
    ctx.csize = 0
    with nogil:
        _md_rec(&ctx, 0, 0)
    try:
        return ctx.best_size, tuple(ctx.best_sel[i] for i in range(ctx.best_size))
    finally:
        free(ctx.masks)
        free(ctx.best_sel)
        free(ctx.chosen)


cdef struct HdCtx:
    u64 *masks
    int m
    u64 universe
    int min_size
    int need


cdef int _hd_rec(HdCtx *c, int i, u64 un, int size) nogil:
    cdef int j, freebits, cap, avail, bound
    if size >= c.need:
        return 1
    if i == c.m:
        return 0
    freebits = wc_popcount64(c.universe & ~un)
    cap = freebits // c.min_size if c.min_size else c.m
    avail = 0
    for j in range(i, c.m):
        if (c.masks[j] & un) == 0:
            avail += 1
    bound = cap if cap < avail else avail
    if size + bound < c.need:
        return 0
    if (c.masks[i] & un) == 0:
        if _hd_rec(c, i + 1, un | c.masks[i], size + 1):
            return 1
    return _hd_rec(c, i + 1, un, size)


cdef int _hd_raw(u64 *masks, int m, int need) nogil:
    cdef HdCtx c
    cdef int i, pc
    if need <= 0:
        return 1
    if m < need:
        return 0
    c.masks = masks
    c.m = m
    c.universe = 0
    c.min_size = 65
    for i in range(m):
        c.universe |= masks[i]
        pc = wc_popcount64(masks[i])
        if pc < c.min_size:
            c.min_size = pc
    c.need = need
    return _hd_rec(&c, 0, 0, 0)


def has_disjoint(masks, int need):
    """Whether ``masks`` contains ``need`` pairwise-disjoint members."""
    if need <= 0:
        return True
    cdef int m = len(masks)
    if m < need:
        return False
    cdef u64 *arr = <u64 *> malloc(m * sizeof(u64))
    if arr == NULL:
        raise MemoryError()
    cdef int i
    for i in range(m):
        arr[i] = masks[i]
    cdef int got
    with nogil:
        got = _hd_raw(arr, m, need)
    free(arr)
    return bool(got)


cdef struct MfCtx:
    u64 *masks
    int m
    int ell
    int best
    bint have
    int *best_sel
    int *chosen_idx
    u64 *chosen_masks
    u64 *compat
    int csize
    i64 nodes


cdef void _mf_rec(MfCtx *c, int i) nogil:
    cdef int size, j, ub, dcnt
    cdef u64 b
    c.nodes += 1
    size = c.csize
    if size > c.best:
        c.best = size
        c.have = 1
        for j in range(size):
            c.best_sel[j] = c.chosen_idx[j]
    if i == c.m:
        return
    ub = size + (c.m - i)
    if ub < c.best or (ub == c.best and c.have):
        return
    b = c.masks[i]
    dcnt = 0
    for j in range(size):
        if (c.chosen_masks[j] & b) == 0:
            c.compat[dcnt] = c.chosen_masks[j]
            dcnt += 1
    if not _hd_raw(c.compat, dcnt, c.ell - 1):
        c.chosen_idx[size] = i
        c.chosen_masks[size] = b
        c.csize += 1
        _mf_rec(c, i + 1)
        c.csize -= 1
    _mf_rec(c, i + 1)


def max_family_no_matching_bb(masks, int ell, int seed_best):
    """Largest subfamily of ``masks`` with no ``ell`` pairwise-disjoint members.

    Same contract as the pure Python twin: (size, lex-least witness
    indices, nodes visited); ``seed_best`` must be strictly below some
    attainable size.
    """
    cdef int m = len(masks)
    cdef int cap = m if m > 0 else 1
    cdef MfCtx ctx
    ctx.masks = <u64 *> malloc(cap * sizeof(u64))
    ctx.best_sel = <int *> malloc(cap * sizeof(int))
    ctx.chosen_idx = <int *> malloc(cap * sizeof(int))
    ctx.chosen_masks = <u64 *> malloc(cap * sizeof(u64))
    ctx.compat = <u64 *> malloc(cap * sizeof(u64))
    if (ctx.masks == NULL or ctx.best_sel == NULL or ctx.chosen_idx == NULL or
            ctx.chosen_masks == NULL or ctx.compat == NULL):
        _mf_free(&ctx)
        raise MemoryError()
    cdef int i
    for i in range(m):
        ctx.masks[i] = masks[i]
    ctx.m = m
    ctx.ell = ell
    ctx.best = seed_best
    ctx.have = 0
    ctx.csize = 0
    ctx.nodes = 0
    with nogil:
        _mf_rec(&ctx, 0)
    try:
        if not ctx.have:
            raise ValueError("seed_best was not strictly below an attainable size")
        return (ctx.best,
                tuple(ctx.best_sel[i] for i in range(ctx.best)),
                ctx.nodes)
    finally:
        _mf_free(&ctx)


cdef void _mf_free(MfCtx *ctx):
    free(ctx.masks)
    free(ctx.best_sel)
    free(ctx.chosen_idx)
    free(ctx.chosen_masks)
    free(ctx.compat)
