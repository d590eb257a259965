"""Pure-Python construction kernels.

Every function here has a drop-in twin in ``_ckernels.pyx``; ``_backend``
picks one at import time. Inputs and outputs are plain ``bytes``/``list``
so both implementations are interchangeable.
"""


def suffix_array(seq):
    """Return the 0-based suffix array of ``seq`` (prefix doubling)."""
    n = len(seq)
    if n == 0:
        return []
    rank = list(seq)
    sa = sorted(range(n), key=rank.__getitem__)
    k = 1
    while True:
        def key(i, rank=rank, k=k, n=n):
            j = i + k
            return (rank[i], rank[j] if j < n else -1)

        sa.sort(key=key)
        new = [0] * n
        prev = key(sa[0])
        r = 0
        for idx in range(1, n):
            cur = key(sa[idx])
            if cur != prev:
                r += 1
                prev = cur
            new[sa[idx]] = r
        rank = new
        if r == n - 1:
            return sa
        k <<= 1


def lcp_kasai(seq, sa):
    """``lcp[i]`` = longest common prefix of suffixes ``sa[i-1]`` and ``sa[i]``; ``lcp[0] = 0``."""
    n = len(seq)
    rank = [0] * n
    for i, p in enumerate(sa):
        rank[p] = i
    lcp = [0] * n
    h = 0
    for p in range(n):
        r = rank[p]
        if r > 0:
            q = sa[r - 1]
            while p + h < n and q + h < n and seq[p + h] == seq[q + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def lcp_interval_parens(lcp):
    """Balanced parentheses (1 = open) of the LCP-interval tree with one leaf per row."""
    n = len(lcp)
    opens = [0] * n
    closes = [0] * n
    stack_lcp = [0]
    stack_lb = [0]
    for i in range(1, n + 1):
        cur = lcp[i] if i < n else 0
        lb = i - 1
        while cur < stack_lcp[-1]:
            stack_lcp.pop()
            lb = stack_lb.pop()
            opens[lb] += 1
            closes[i - 1] += 1
        if cur > stack_lcp[-1]:
            stack_lcp.append(cur)
            stack_lb.append(lb)
    # root
    opens[0] += 1
    closes[n - 1] += 1
    out = bytearray()
    for i in range(n):
        out += b"\x01" * opens[i]
        out += b"\x01\x00"
        out += b"\x00" * closes[i]
    return bytes(out)


def bp_tables(parens):
    """Navigation tables for a balanced-parentheses tree.

    Returns ``(parent, depth, open_pos, close_pos, leaves_before, nleaves,
    leaf_ids, euler)``; node arrays are indexed by 1-based preorder id with a
    dummy slot 0.
    """
    m = len(parens)
    t = m // 2
    parent = [0] * (t + 1)
    depth = [0] * (t + 1)
    open_pos = [0] * (t + 1)
    close_pos = [0] * (t + 1)
    leaves_before = [0] * (t + 1)
    nleaves = [0] * (t + 1)
    leaf_ids = []
    euler = [0] * m
    stack = []
    nid = 0
    leaves = 0
    for pos in range(m):
        if parens[pos]:
            nid += 1
            v = nid
            parent[v] = stack[-1] if stack else 0
            depth[v] = len(stack)
            open_pos[v] = pos
            leaves_before[v] = leaves
            if pos + 1 < m and not parens[pos + 1]:
                leaf_ids.append(v)
                leaves += 1
            stack.append(v)
            euler[pos] = v
        else:
            v = stack.pop()
            close_pos[v] = pos
            nleaves[v] = leaves - leaves_before[v]
            euler[pos] = parent[v] if parent[v] else v
    return parent, depth, open_pos, close_pos, leaves_before, nleaves, leaf_ids, euler


def sparse_table_argmin(keys):
    """Sparse table of argmin positions over ``keys`` (ties to the left)."""
    m = len(keys)
    levels = [list(range(m))]
    span = 1
    while 2 * span <= m:
        prev = levels[-1]
        cur = []
        for i in range(m - 2 * span + 1):
            a = prev[i]
            b = prev[i + span]
            cur.append(a if keys[a] <= keys[b] else b)
        levels.append(cur)
        span *= 2
    return levels


class FlatTree:
    """Array view of a balanced-parentheses tree: lca, locus and leaf intervals."""

    def __init__(self, parent, depth, open_pos, lbefore, nleaves, leaf_ids, euler, rmq):
        self.parent = parent
        self.depth = depth
        self.open_pos = open_pos
        self.lbefore = lbefore
        self.nleaves = nleaves
        self.leaf_ids = leaf_ids  # 0-based: row r is leaf_ids[r - 1]
        self.euler = euler
        self.rmq = rmq

    def lca(self, v, w):
        x = self.open_pos[v]
        y = self.open_pos[w]
        if x > y:
            x, y = y, x
        k = (y - x + 1).bit_length() - 1
        level = self.rmq[k]
        a = self.euler[level[x]]
        b = self.euler[level[y - (1 << k) + 1]]
        return a if self.depth[a] <= self.depth[b] else b

    def locus(self, lo, hi):
        return self.lca(self.leaf_ids[lo - 1], self.leaf_ids[hi - 1])


class ContractionKernel:
    """Left contraction on one text ``X`` over flat arrays.

    ``contract`` returns ``(lo, hi, other_lo, other_hi, branch)`` with branch
    codes 1 right-maximal, 2 edge, 3 path-below, 4 path, 5 practical-level,
    6 practical-direct; modes are 0 theorem, 1 theorem-general, 2 practical.
    Inconsistent input raises ``ValueError``.
    """

    def __init__(self, tree, other, marks, lma, sa, isa, st_to_slt, slt_depth,
                 bd_nodes, bd_start, slt_next, slt_to_st, other_heads):
        self.tree = tree
        self.other = other
        self.marks = marks
        self.lma = lma
        self.sa = sa
        self.isa = isa
        self.n = len(sa) - 1
        self.st_to_slt = st_to_slt
        self.slt_depth = slt_depth
        self.bd_nodes = bd_nodes
        self.bd_start = bd_start
        self.slt_next = slt_next
        self.slt_to_st = slt_to_st
        self.other_heads = other_heads

    def suffix_link(self, v):
        if v == 1:
            raise ValueError("root has no suffix link")
        t = self.tree
        lo = t.lbefore[v] + 1
        hi = t.lbefore[v] + t.nleaves[v]
        a = self.sa[lo] + 1
        b = self.sa[hi] + 1
        if a > self.n or b > self.n:
            raise ValueError("suffix link of the terminator leaf")
        x = t.leaf_ids[self.isa[a] - 1]
        if lo == hi:
            return x
        return t.lca(x, t.leaf_ids[self.isa[b] - 1])

    def maxrep_prefix(self, z, length):
        x = self.st_to_slt[z]
        if length > self.slt_depth[x]:
            raise ValueError("prefix longer than the maximal repeat")
        nodes = self.bd_nodes
        lo, hi = self.bd_start[length], self.bd_start[length + 1]
        # last node at this depth preceding x in preorder is its ancestor
        while lo < hi:
            mid = (lo + hi) // 2
            if nodes[mid] <= x:
                lo = mid + 1
            else:
                hi = mid
        y = self.slt_next[nodes[lo - 1]]
        if y == 0:
            raise ValueError("no maximal repeat below the level ancestor")
        return self.slt_to_st[y]

    def contract(self, a_lo, a_hi, b_lo, b_hi, length, mode):
        t = self.tree
        oh = self.other_heads
        target = length - 1
        if mode == 0 and oh[b_hi] - oh[b_lo] > 0:
            w = self.suffix_link(t.locus(a_lo, a_hi))
            branch = 1
        elif mode == 2:
            vl = self.suffix_link(t.locus(a_lo, a_hi))
            z = self.lma[vl]
            if self.slt_depth[self.st_to_slt[z]] >= target:
                w = self.maxrep_prefix(z, target)
                branch = 5
            else:
                w = vl
                branch = 6
        else:
            v = t.locus(a_lo, a_hi)
            if v == 1:
                raise ValueError("locus is the root")
            u = t.parent[v]
            ul = 1 if u == 1 else self.suffix_link(u)
            vl = self.suffix_link(v)
            z = t.parent[vl]
            if z == ul:
                w = vl
                branch = 2
            elif not self.marks[z]:
                raise ValueError("path case reached an ancestor that is not a maximal repeat")
            elif target > self.slt_depth[self.st_to_slt[z]]:
                w = vl
                branch = 3
            else:
                w = self.maxrep_prefix(z, target)
                branch = 4
        lo = t.lbefore[w] + 1
        width = t.nleaves[w]
        if b_hi - b_lo + 1 != width:
            o = self.other
            x = o.locus(b_lo, b_hi)
            if x == 1:
                raise ValueError("mirrored interval does not match the contracted frequency")
            p = o.parent[x]
            if o.nleaves[p] != width:
                raise ValueError("mirrored interval does not match the contracted frequency")
            b_lo = o.lbefore[p] + 1
            b_hi = b_lo + width - 1
        return lo, lo + width - 1, b_lo, b_hi, branch
