# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled construction kernels; same contracts as ``_kernels``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef void _radix_pass(int *src, int *dst, int *key, int n, int nkeys, int *cnt):
    cdef int i, s, c
    memset(cnt, 0, (nkeys + 1) * sizeof(int))
    for i in range(n):
        cnt[key[src[i]] + 1] += 1
    s = 0
    for i in range(nkeys + 1):
        c = cnt[i]
        cnt[i] = s
        s += c
    for i in range(n):
        c = key[src[i]] + 1
        dst[cnt[c]] = src[i]
        cnt[c] += 1


def suffix_array(const unsigned char[:] seq):
    cdef int n = seq.shape[0]
    if n == 0:
        return []
    cdef int *sa = <int *>malloc(n * sizeof(int))
    cdef int *tmp = <int *>malloc(n * sizeof(int))
    cdef int *rank = <int *>malloc(n * sizeof(int))
    cdef int *second = <int *>malloc(n * sizeof(int))
    cdef int *newrank = <int *>malloc(n * sizeof(int))
    cdef int *cnt = <int *>malloc((max(n, 300) + 4) * sizeof(int))
    cdef int i, k, r, a, b, nkeys
    try:
        for i in range(n):
            rank[i] = seq[i]
            tmp[i] = i
        _radix_pass(tmp, sa, rank, n, 256, cnt)
        nkeys = 257
        k = 1
        while True:
            # second key: rank of i+k, or -1 past the end (stored shifted by +1)
            for i in range(n):
                second[i] = rank[i + k] + 1 if i + k < n else 0
            for i in range(n):
                tmp[i] = i
            _radix_pass(tmp, sa, second, n, nkeys + 1, cnt)
            for i in range(n):
                tmp[i] = sa[i]
            _radix_pass(tmp, sa, rank, n, nkeys, cnt)
            r = 0
            newrank[sa[0]] = 0
            for i in range(1, n):
                a = sa[i - 1]
                b = sa[i]
                if rank[a] != rank[b] or second[a] != second[b]:
                    r += 1
                newrank[b] = r
            for i in range(n):
                rank[i] = newrank[i]
            if r == n - 1:
                break
            nkeys = r + 1
            k <<= 1
        return [sa[i] for i in range(n)]
    finally:
        free(sa); free(tmp); free(rank); free(second); free(newrank); free(cnt)


def lcp_kasai(const unsigned char[:] seq, sa):
    cdef int n = seq.shape[0]
    cdef int *rank = <int *>malloc((n + 1) * sizeof(int))
    cdef int *csa = <int *>malloc((n + 1) * sizeof(int))
    cdef int *lcp = <int *>malloc((n + 1) * sizeof(int))
    cdef int i, p, q, h = 0, r
    try:
        for i in range(n):
            csa[i] = sa[i]
            rank[csa[i]] = i
            lcp[i] = 0
        for p in range(n):
            r = rank[p]
            if r > 0:
                q = csa[r - 1]
                while p + h < n and q + h < n and seq[p + h] == seq[q + h]:
                    h += 1
                lcp[r] = h
                if h > 0:
                    h -= 1
            else:
                h = 0
        return [lcp[i] for i in range(n)]
    finally:
        free(rank); free(csa); free(lcp)


def lcp_interval_parens(lcp):
    cdef int n = len(lcp)
    cdef int *opens = <int *>malloc(n * sizeof(int))
    cdef int *closes = <int *>malloc(n * sizeof(int))
    cdef int *clcp = <int *>malloc(n * sizeof(int))
    cdef int *st_lcp = <int *>malloc((n + 1) * sizeof(int))
    cdef int *st_lb = <int *>malloc((n + 1) * sizeof(int))
    cdef int i, j, top = 0, cur, lb, total = 0, pos
    cdef bytearray out
    cdef unsigned char *o
    try:
        for i in range(n):
            opens[i] = 0
            closes[i] = 0
            clcp[i] = lcp[i]
        st_lcp[0] = 0
        st_lb[0] = 0
        for i in range(1, n + 1):
            cur = clcp[i] if i < n else 0
            lb = i - 1
            while cur < st_lcp[top]:
                lb = st_lb[top]
                top -= 1
                opens[lb] += 1
                closes[i - 1] += 1
            if cur > st_lcp[top]:
                top += 1
                st_lcp[top] = cur
                st_lb[top] = lb
        opens[0] += 1
        closes[n - 1] += 1
        for i in range(n):
            total += opens[i] + closes[i] + 2
        out = bytearray(total)
        o = out
        pos = 0
        for i in range(n):
            for j in range(opens[i]):
                o[pos] = 1
                pos += 1
            o[pos] = 1
            o[pos + 1] = 0
            pos += 2
            for j in range(closes[i]):
                o[pos] = 0
                pos += 1
        return bytes(out)
    finally:
        free(opens); free(closes); free(clcp); free(st_lcp); free(st_lb)


def bp_tables(const unsigned char[:] parens):
    cdef int m = parens.shape[0]
    cdef int t = m // 2
    cdef int *parent = <int *>malloc((t + 1) * sizeof(int))
    cdef int *depth = <int *>malloc((t + 1) * sizeof(int))
    cdef int *open_pos = <int *>malloc((t + 1) * sizeof(int))
    cdef int *close_pos = <int *>malloc((t + 1) * sizeof(int))
    cdef int *leaves_before = <int *>malloc((t + 1) * sizeof(int))
    cdef int *nleaves = <int *>malloc((t + 1) * sizeof(int))
    cdef int *euler = <int *>malloc((m + 1) * sizeof(int))
    cdef int *stack = <int *>malloc((t + 1) * sizeof(int))
    cdef int pos, v, top = 0, nid = 0, leaves = 0
    leaf_ids = []
    try:
        parent[0] = depth[0] = open_pos[0] = close_pos[0] = 0
        leaves_before[0] = nleaves[0] = 0
        for pos in range(m):
            if parens[pos]:
                nid += 1
                v = nid
                parent[v] = stack[top - 1] if top > 0 else 0
                depth[v] = top
                open_pos[v] = pos
                leaves_before[v] = leaves
                if pos + 1 < m and parens[pos + 1] == 0:
                    leaf_ids.append(v)
                    leaves += 1
                stack[top] = v
                top += 1
                euler[pos] = v
            else:
                top -= 1
                v = stack[top]
                close_pos[v] = pos
                nleaves[v] = leaves - leaves_before[v]
                euler[pos] = parent[v] if parent[v] else v
        return (
            [parent[i] for i in range(t + 1)],
            [depth[i] for i in range(t + 1)],
            [open_pos[i] for i in range(t + 1)],
            [close_pos[i] for i in range(t + 1)],
            [leaves_before[i] for i in range(t + 1)],
            [nleaves[i] for i in range(t + 1)],
            leaf_ids,
            [euler[i] for i in range(m)],
        )
    finally:
        free(parent); free(depth); free(open_pos); free(close_pos)
        free(leaves_before); free(nleaves); free(euler); free(stack)


def sparse_table_argmin(keys):
    cdef int m = len(keys)
    cdef int *ck = <int *>malloc((m + 1) * sizeof(int))
    cdef int *prev = <int *>malloc((m + 1) * sizeof(int))
    cdef int *cur = <int *>malloc((m + 1) * sizeof(int))
    cdef int i, a, b, span = 1, width
    try:
        for i in range(m):
            ck[i] = keys[i]
            prev[i] = i
        levels = [list(range(m))]
        while 2 * span <= m:
            width = m - 2 * span + 1
            for i in range(width):
                a = prev[i]
                b = prev[i + span]
                cur[i] = a if ck[a] <= ck[b] else b
            levels.append([cur[i] for i in range(width)])
            for i in range(width):
                prev[i] = cur[i]
            span *= 2
        return levels
    finally:
        free(ck); free(prev); free(cur)


from array import array


cdef inline int _bitlen(unsigned int x):
    cdef int r = 0
    while x:
        x >>= 1
        r += 1
    return r


def _ints(values):
    return array("i", values)


cdef class FlatTree:
    """Array view of a balanced-parentheses tree: lca, locus and leaf intervals."""

    cdef public object parent, depth, open_pos, lbefore, nleaves, leaf_ids, euler, rmq
    cdef int[::1] _parent, _depth, _open, _lbefore, _nleaves, _leaf_ids, _euler, _rmq
    cdef int _m

    def __init__(self, parent, depth, open_pos, lbefore, nleaves, leaf_ids, euler, rmq):
        self.parent = parent
        self.depth = depth
        self.open_pos = open_pos
        self.lbefore = lbefore
        self.nleaves = nleaves
        self.leaf_ids = leaf_ids
        self.euler = euler
        self.rmq = rmq
        self._parent = _ints(parent)
        self._depth = _ints(depth)
        self._open = _ints(open_pos)
        self._lbefore = _ints(lbefore)
        self._nleaves = _ints(nleaves)
        self._leaf_ids = _ints(leaf_ids)
        self._euler = _ints(euler)
        m = len(euler)
        self._m = m
        flat = array("i", [0]) * (m * len(rmq))
        for k, level in enumerate(rmq):
            flat[k * m:k * m + len(level)] = array("i", level)
        self._rmq = flat

    cdef inline int c_lca(self, int v, int w):
        cdef int x = self._open[v]
        cdef int y = self._open[w]
        cdef int t, k, a, b
        if x > y:
            t = x
            x = y
            y = t
        k = _bitlen(y - x + 1) - 1
        a = self._euler[self._rmq[k * self._m + x]]
        b = self._euler[self._rmq[k * self._m + y - (1 << k) + 1]]
        return a if self._depth[a] <= self._depth[b] else b

    cdef inline int c_locus(self, int lo, int hi):
        return self.c_lca(self._leaf_ids[lo - 1], self._leaf_ids[hi - 1])

    def lca(self, int v, int w):
        return self.c_lca(v, w)

    def locus(self, int lo, int hi):
        return self.c_locus(lo, hi)


cdef class ContractionKernel:
    """Left contraction on one text over flat arrays; see the pure-Python twin."""

    cdef FlatTree tree, other
    cdef int[::1] marks, lma, sa, isa, st_to_slt, slt_depth, bd_nodes, bd_start
    cdef int[::1] slt_next, slt_to_st, other_heads
    cdef int n

    def __init__(self, FlatTree tree, FlatTree other, marks, lma, sa, isa, st_to_slt,
                 slt_depth, bd_nodes, bd_start, slt_next, slt_to_st, other_heads):
        self.tree = tree
        self.other = other
        self.marks = _ints(marks)
        self.lma = _ints(lma)
        self.sa = _ints(sa)
        self.isa = _ints(isa)
        self.n = len(sa) - 1
        self.st_to_slt = _ints(st_to_slt)
        self.slt_depth = _ints(slt_depth)
        self.bd_nodes = _ints(bd_nodes)
        self.bd_start = _ints(bd_start)
        self.slt_next = _ints(slt_next)
        self.slt_to_st = _ints(slt_to_st)
        self.other_heads = _ints(other_heads)

    cdef int c_suffix_link(self, int v) except -1:
        cdef FlatTree t = self.tree
        cdef int lo, hi, a, b, x
        if v == 1:
            raise ValueError("root has no suffix link")
        lo = t._lbefore[v] + 1
        hi = t._lbefore[v] + t._nleaves[v]
        a = self.sa[lo] + 1
        b = self.sa[hi] + 1
        if a > self.n or b > self.n:
            raise ValueError("suffix link of the terminator leaf")
        x = t._leaf_ids[self.isa[a] - 1]
        if lo == hi:
            return x
        return t.c_lca(x, t._leaf_ids[self.isa[b] - 1])

    cdef int c_maxrep_prefix(self, int z, int length) except -1:
        cdef int x = self.st_to_slt[z]
        cdef int lo, hi, mid, y
        if length > self.slt_depth[x]:
            raise ValueError("prefix longer than the maximal repeat")
        lo = self.bd_start[length]
        hi = self.bd_start[length + 1]
        while lo < hi:
            mid = (lo + hi) // 2
            if self.bd_nodes[mid] <= x:
                lo = mid + 1
            else:
                hi = mid
        y = self.slt_next[self.bd_nodes[lo - 1]]
        if y == 0:
            raise ValueError("no maximal repeat below the level ancestor")
        return self.slt_to_st[y]

    def suffix_link(self, int v):
        return self.c_suffix_link(v)

    def maxrep_prefix(self, int z, int length):
        return self.c_maxrep_prefix(z, length)

    def contract(self, int a_lo, int a_hi, int b_lo, int b_hi, int length, int mode):
        cdef FlatTree t = self.tree
        cdef FlatTree o = self.other
        cdef int target = length - 1
        cdef int v, u, ul, vl, z, w, branch, lo, width, x, p
        if mode == 0 and self.other_heads[b_hi] - self.other_heads[b_lo] > 0:
            w = self.c_suffix_link(t.c_locus(a_lo, a_hi))
            branch = 1
        elif mode == 2:
            vl = self.c_suffix_link(t.c_locus(a_lo, a_hi))
            z = self.lma[vl]
            if self.slt_depth[self.st_to_slt[z]] >= target:
                w = self.c_maxrep_prefix(z, target)
                branch = 5
            else:
                w = vl
                branch = 6
        else:
            v = t.c_locus(a_lo, a_hi)
            if v == 1:
                raise ValueError("locus is the root")
            u = t._parent[v]
            ul = 1 if u == 1 else self.c_suffix_link(u)
            vl = self.c_suffix_link(v)
            z = t._parent[vl]
            if z == ul:
                w = vl
                branch = 2
            elif not self.marks[z]:
                raise ValueError("path case reached an ancestor that is not a maximal repeat")
            elif target > self.slt_depth[self.st_to_slt[z]]:
                w = vl
                branch = 3
            else:
                w = self.c_maxrep_prefix(z, target)
                branch = 4
        lo = t._lbefore[w] + 1
        width = t._nleaves[w]
        if b_hi - b_lo + 1 != width:
            x = o.c_locus(b_lo, b_hi)
            if x == 1:
                raise ValueError("mirrored interval does not match the contracted frequency")
            p = o._parent[x]
            if o._nleaves[p] != width:
                raise ValueError("mirrored interval does not match the contracted frequency")
            b_lo = o._lbefore[p] + 1
            b_hi = b_lo + width - 1
        return lo, lo + width - 1, b_lo, b_hi, branch
