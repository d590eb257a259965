"""CDAWG-based bidirectional index.

Every right-maximal substring of ``X`` belongs to the equivalence class of
the maximal repeat reached by following its (unique) left extensions; a
class is one CDAWG node. Suffix-tree nodes are addressed as
:class:`CdawgStId` tuples ``(node, string length, lo, hi)`` and navigated
with the CDAWG arcs plus rank/select on a run-length BWT. Leaves all live in
the sink and are addressed by suffix length (terminator included) and row.
"""

import struct
from bisect import bisect_left, bisect_right
from typing import NamedTuple

from .biindex import LEFT, RIGHT, STRATEGIES, Interval, normalize_side
from .errors import (DescriptorError, EmptyDescriptorError, IndexFormatError,
                     InvalidSymbolError, NoMaximalRepeatError, NotFoundError,
                     OutOfRangeError, TreeQueryError)
from .textcore import TERMINATOR, build_suffix_structures
from .topology import SltTopology, build_topologies


class RlBwt:
    """Run-length encoded BWT with rank, select and access by binary search over runs."""

    def __init__(self, runs, sigma):
        # runs: list of (c, i, j), 1-based inclusive, in text order
        self.sigma = sigma
        self.heads = [i for _, i, _ in runs]
        self.chars = [c for c, _, _ in runs]
        self.ends = [j for _, _, j in runs]
        self.n = runs[-1][2] if runs else 0
        self._ridx = [[] for _ in range(sigma + 1)]
        self._cum = [[] for _ in range(sigma + 1)]
        totals = [0] * (sigma + 1)
        for r, (c, i, j) in enumerate(runs):
            self._ridx[c].append(r)
            self._cum[c].append(totals[c])
            totals[c] += j - i + 1
        C = [0] * (sigma + 2)
        for c in range(sigma + 1):
            C[c + 1] = C[c] + totals[c]
        self.C = C
        self.occ = totals

    @classmethod
    def from_symbols(cls, symbols, sigma):
        runs = []
        start = 1
        for p in range(1, len(symbols) + 1):
            if p == len(symbols) or symbols[p] != symbols[p - 1]:
                runs.append((symbols[p - 1], start, p))
                start = p + 1
        return cls(runs, sigma)

    @property
    def run_count(self):
        return len(self.heads)

    def runs(self):
        return list(zip(self.chars, self.heads, self.ends))

    def _check_symbol(self, c):
        if not 0 <= c <= self.sigma:
            raise InvalidSymbolError(f"symbol {c} outside [0..{self.sigma}]")

    def access(self, i):
        if not 1 <= i <= self.n:
            raise OutOfRangeError(f"position {i} outside [1..{self.n}]")
        return self.chars[bisect_right(self.heads, i) - 1]

    __getitem__ = access

    def rank(self, c, i):
        """Occurrences of ``c`` in positions ``1..i``."""
        self._check_symbol(c)
        if not 0 <= i <= self.n:
            raise OutOfRangeError(f"position {i} outside [0..{self.n}]")
        if i == 0:
            return 0
        r = bisect_right(self.heads, i) - 1
        ridx = self._ridx[c]
        k = bisect_right(ridx, r)
        if k == 0:
            return 0
        last = ridx[k - 1]
        if last == r:
            return self._cum[c][k - 1] + i - self.heads[r] + 1
        return self._cum[c][k - 1] + self.ends[last] - self.heads[last] + 1

    def select(self, c, k):
        """Position of the ``k``-th ``c`` (1-based)."""
        self._check_symbol(c)
        if not 1 <= k <= self.occ[c]:
            raise OutOfRangeError(f"symbol {c} occurs {self.occ[c]} times, asked for {k}")
        cum = self._cum[c]
        q = bisect_right(cum, k - 1) - 1
        return self.heads[self._ridx[c][q]] + k - 1 - cum[q]

    def to_bytes(self):
        out = [self.sigma, len(self.heads)]
        for r in self.runs():
            out.extend(r)
        return pack_ints(out)

    @classmethod
    def from_bytes(cls, payload):
        vals = unpack_ints(payload)
        if len(vals) < 2 or len(vals) != 2 + 3 * vals[1]:
            raise IndexFormatError("malformed run-length BWT payload")
        runs = [tuple(vals[2 + 3 * i:5 + 3 * i]) for i in range(vals[1])]
        return cls(runs, vals[0])

    def f_symbol(self, i):
        """First-column symbol of row ``i``."""
        return bisect_left(self.C, i) - 1

    def psi(self, i):
        """Row of the suffix following the suffix at row ``i``."""
        c = self.f_symbol(i)
        return self.select(c, i - self.C[c])

    def lf_interval(self, c, lo, hi):
        base = self.C[c]
        return base + self.rank(c, lo - 1) + 1, base + self.rank(c, hi)


class CdawgStId(NamedTuple):
    node: int
    strlen: int
    lo: int
    hi: int


class Cdawg:
    """CDAWG of ``X#`` with one node per maximal repeat plus a sink (the last node)."""

    def __init__(self, length, size, first, last, arcs, weiner, sl_arc, mr_parent,
                 affix, rl):
        self.length = length
        self.size = size
        self.first = first
        self.last = last
        self.arcs = arcs          # node -> [(char, right, target, offset)] by char
        self.weiner = weiner      # node -> {char: (target, strlen)}
        self.sl_arc = sl_arc      # node -> maximal repeat reached from its shortest member
        self.mr_parent = mr_parent
        self.affix = affix        # node -> node of the mirrored CDAWG for the reversed label
        self.rl = rl
        self.n = rl.n
        self.sink = len(length)
        self.root = 0
        self._arc_chars = [[a[0] for a in lst] for lst in arcs]
        self._build_in_arcs()
        self._build_lifting()

    def _build_in_arcs(self):
        incoming = [[] for _ in range(self.sink + 1)]
        for p, lst in enumerate(self.arcs):
            low = self.length[p] - self.size[p]
            for _, right, t, off in lst:
                incoming[t].append((low + right, p, right, off))
        for lst in incoming:
            lst.sort()
        self._in_starts = [[x[0] for x in lst] for lst in incoming]
        self._in_arcs = [[x[1:] for x in lst] for lst in incoming]

    def _build_lifting(self):
        up = [list(self.mr_parent)]
        while True:
            prev = up[-1]
            nxt = [prev[p] if p >= 0 else -1 for p in prev]
            if nxt == prev or all(x < 0 for x in nxt):
                up.append(nxt)
                break
            up.append(nxt)
        self._up = up

    # -- sizes -----------------------------------------------------------------

    @property
    def node_count(self):
        """Nodes including the sink."""
        return self.sink + 1

    @property
    def arc_count(self):
        return sum(len(lst) for lst in self.arcs)

    def pruned_counts(self, tau):
        """``(nodes, arcs)`` after deleting maximal repeats shorter than ``tau``; the sink survives."""
        if tau < 0:
            raise ValueError("tau must be non-negative")
        keep = [ln >= tau for ln in self.length] + [True]
        nodes = sum(keep)
        arcs = 0
        for p, lst in enumerate(self.arcs):
            if keep[p]:
                arcs += sum(1 for a in lst if keep[a[2]])
        return nodes, arcs

    # -- identifiers ----------------------------------------------------------

    def width(self, node):
        if node == self.sink:
            return 1
        return self.last[node] - self.first[node] + 1

    def root_id(self):
        return CdawgStId(0, 0, 1, self.n)

    def rep_id(self, node):
        """Identifier of the maximal repeat of class ``node``."""
        return CdawgStId(node, self.length[node], self.first[node], self.last[node])

    def is_rep(self, x):
        return x.node != self.sink and x.strlen == self.length[x.node]

    def is_leaf(self, x):
        return x.node == self.sink

    # -- suffix-tree navigation -------------------------------------------------

    def string_depth(self, x):
        return x.strlen

    def child(self, x, c):
        if x.node == self.sink:
            raise NotFoundError("leaves have no children")
        chars = self._arc_chars[x.node]
        k = bisect_left(chars, c)
        if k == len(chars) or chars[k] != c:
            raise NotFoundError(f"no child by symbol {c}")
        _, right, t, off = self.arcs[x.node][k]
        lo = x.lo + off
        return CdawgStId(t, x.strlen + right, lo, lo + self.width(t) - 1)

    def children_symbols(self, x):
        return list(self._arc_chars[x.node])

    def parent(self, x):
        if x.strlen == 0:
            raise TreeQueryError("root has no parent")
        k = bisect_left(self._in_starts[x.node], x.strlen) - 1
        if k < 0:
            raise TreeQueryError(f"{x} is not a node of this CDAWG")
        p, right, off = self._in_arcs[x.node][k]
        lo = x.lo - off
        return CdawgStId(p, x.strlen - right, lo, lo + self.width(p) - 1)

    def suffix_link(self, x):
        if x.strlen == 0:
            raise TreeQueryError("root has no suffix link")
        if x.node == self.sink:
            if x.strlen == 1:
                return self.root_id()
            row = self.rl.psi(x.lo)
            return CdawgStId(self.sink, x.strlen - 1, row, row)
        if x.strlen > self.length[x.node] - self.size[x.node] + 1:
            return CdawgStId(x.node, x.strlen - 1, self.rl.psi(x.lo), self.rl.psi(x.hi))
        return self.rep_id(self.sl_arc[x.node])

    def weiner_link(self, x, c):
        """Locus of ``c`` followed by the label of ``x``."""
        if c == TERMINATOR:
            raise NotFoundError("no Weiner link by the terminator")
        lo, hi = self.rl.lf_interval(c, x.lo, x.hi)
        if lo > hi:
            raise NotFoundError(f"symbol {c} is not a left extension")
        if x.node == self.sink:
            return CdawgStId(self.sink, x.strlen + 1, lo, hi)
        if x.strlen < self.length[x.node]:
            return CdawgStId(x.node, x.strlen + 1, lo, hi)
        t, strlen = self.weiner[x.node][c]
        return CdawgStId(t, strlen, lo, hi)

    def weighted_ancestor(self, node, length):
        """Shallowest maximal-repeat ancestor-or-self of ``node`` with length >= ``length``."""
        if self.length[node] < length:
            raise TreeQueryError("node is shorter than the requested length")
        for row in reversed(self._up):
            a = row[node]
            if a >= 0 and self.length[a] >= length:
                node = a
        return node

    # -- serialization ----------------------------------------------------------

    def to_bytes(self):
        """Node records, arcs and Weiner arcs; the run-length BWT and affix links are stored apart."""
        m = self.sink
        out = [m]
        for arr in (self.length, self.size, self.first, self.last, self.sl_arc, self.mr_parent):
            out.extend(arr)
        for lst in self.arcs:
            out.append(len(lst))
            for a in lst:
                out.extend(a)
        for d in self.weiner:
            out.append(len(d))
            for c in sorted(d):
                out.extend((c, *d[c]))
        return pack_ints(out)

    @classmethod
    def from_bytes(cls, payload, rl, affix):
        vals = unpack_ints(payload)
        pos = 0

        def take(k):
            nonlocal pos
            if pos + k > len(vals):
                raise IndexFormatError("truncated CDAWG payload")
            chunk = list(vals[pos:pos + k])
            pos += k
            return chunk

        (m,) = take(1)
        length, size, first, last, sl_arc, mr_parent = (take(m) for _ in range(6))
        arcs = []
        for _ in range(m):
            (k,) = take(1)
            flat = take(4 * k)
            arcs.append([tuple(flat[4 * i:4 * i + 4]) for i in range(k)])
        weiner = []
        for _ in range(m):
            (k,) = take(1)
            flat = take(3 * k)
            weiner.append({flat[3 * i]: (flat[3 * i + 1], flat[3 * i + 2]) for i in range(k)})
        if pos != len(vals) or len(affix) != m:
            raise IndexFormatError("CDAWG payload size mismatch")
        return cls(length, size, first, last, arcs, weiner, sl_arc, mr_parent, list(affix), rl)


def pack_ints(values):
    return struct.pack(f"<{len(values)}q", *values)


def unpack_ints(payload):
    if len(payload) % 8:
        raise IndexFormatError("payload is not a whole number of 64-bit words")
    return struct.unpack(f"<{len(payload) // 8}q", payload)


def build_cdawg(arrays, strand, other_strand, rl=None):
    """CDAWG of the text behind ``arrays`` by merging suffix-tree classes.

    ``strand`` is the topology strand of the same text; ``other_strand`` that of
    its reverse, used to resolve affix links.
    """
    st = strand.st
    tree = st.tree
    sa, lcp, bwt, symbols = arrays.sa, arrays.lcp, arrays.bwt, arrays.symbols
    N = arrays.n
    nodes = tree.size

    depth = [0] * (nodes + 1)
    kids = [None] * (nodes + 1)
    for v in range(1, nodes + 1):
        lo = tree.leftmost_leaf(v)
        if tree.is_leaf(v):
            depth[v] = N - sa[lo] + 1
        else:
            kids[v] = tree.children(v)
            depth[v] = lcp[tree.leftmost_leaf(kids[v][1])] if len(kids[v]) > 1 else 0

    marks = tree.marks
    reps = [v for v in range(1, nodes + 1) if marks[v]]
    m = len(reps)
    sink = m
    cls = [-1] * (nodes + 1)
    for k, v in enumerate(reps):
        cls[v] = k

    # non-maximal internal nodes inherit the class of their unique Weiner link
    for v in range(1, nodes + 1):
        if kids[v] is None or cls[v] >= 0:
            continue
        chain = []
        u = v
        while cls[u] < 0:
            chain.append(u)
            lo, hi = st.interval(u)
            c = bwt[lo]
            base = bwt.C[c]
            u = st.locus(base + bwt.rank(c, lo - 1) + 1, base + bwt.rank(c, hi))
        for w in chain:
            cls[w] = cls[u]

    length = [depth[v] for v in reps]
    first = [tree.leftmost_leaf(v) for v in reps]
    last = [tree.rightmost_leaf(v) for v in reps]
    size = [0] * m
    shortest = list(reps)
    for v in range(1, nodes + 1):
        if kids[v] is None:
            continue
        k = cls[v]
        size[k] += 1
        if depth[v] < depth[shortest[k]]:
            shortest[k] = v

    def target(v):
        return sink if kids[v] is None else cls[v]

    arcs = []
    weiner = []
    for k, v in enumerate(reps):
        lo, hi = first[k], last[k]
        lst = []
        for ch in kids[v]:
            clo = tree.leftmost_leaf(ch)
            pos = sa[clo] + length[k]  # 1-based position of the first label symbol
            lst.append((symbols[pos - 1], depth[ch] - length[k], target(ch), clo - lo))
        arcs.append(lst)
        links = {}
        for c in bwt.distinct(lo, hi):
            if c == TERMINATOR:
                continue
            base = bwt.C[c]
            w = st.locus(base + bwt.rank(c, lo - 1) + 1, base + bwt.rank(c, hi))
            links[c] = (target(w), depth[w])
        weiner.append(links)

    sl_arc = [-1] * m
    mr_parent = [-1] * m
    for k, v in enumerate(reps):
        if v == st.root:
            continue
        s = st.suffix_link(shortest[k])
        if not marks[s]:
            raise AssertionError("suffix link of a class leaves the maximal repeats")
        sl_arc[k] = cls[s]
        p = tree.parent(v)
        if not marks[p]:
            raise AssertionError("parent of a maximal repeat is not a maximal repeat")
        mr_parent[k] = cls[p]

    other_tree = other_strand.st.tree
    slt_map = strand.slt.rev_st_nodes
    if slt_map is None:
        _, slt_map = SltTopology.from_reverse_st(other_strand.st)
    affix = []
    for v in reps:
        r = slt_map[strand.commute(v, "st_to_slt")]
        affix.append(other_tree.marked_rank(r) - 1)

    rl = rl if rl is not None else RlBwt.from_symbols(bwt.symbols, bwt.sigma)
    return Cdawg(length, size, first, last, arcs, weiner, sl_arc, mr_parent, affix, rl)


def build_cdawg_pair(ss, topo):
    fwd = build_cdawg(ss.fwd, topo.forward, topo.backward)
    bwd = build_cdawg(ss.rev, topo.backward, topo.forward)
    return fwd, bwd


class CdawgDescriptor(NamedTuple):
    floc: CdawgStId
    rloc: CdawgStId
    length: int

    @property
    def fwd(self):
        return Interval(self.floc.lo, self.floc.hi)

    @property
    def rev(self):
        return Interval(self.rloc.lo, self.rloc.hi)

    @property
    def freq(self):
        return self.floc.hi - self.floc.lo + 1


class CdawgIndex:
    """Bidirectional index over the CDAWGs of ``T`` and ``reverse(T)``.

    A substring is the triple of its suffix-tree locus identifiers in both
    directions plus its length; intervals (``.fwd``/``.rev``) agree with
    :class:`~bibwt.biindex.BiIndex` descriptors.
    """

    name = "CDAWG"

    def __init__(self, text, ss=None, topo=None, cdawgs=None):
        self.text = text
        self.n = text.n
        self.sigma = text.sigma
        if cdawgs is None:
            ss = ss if ss is not None else build_suffix_structures(text)
            topo = topo if topo is not None else build_topologies(ss)
            cdawgs = build_cdawg_pair(ss, topo)
        self.forward, self.backward = cdawgs
        self._sides = {LEFT: (self.forward, self.backward), RIGHT: (self.backward, self.forward)}
        self._empty = CdawgDescriptor(self.forward.root_id(), self.backward.root_id(), 0)

    def empty(self):
        return self._empty

    def freq(self, d):
        return d.freq

    @staticmethod
    def _split(d, side):
        return (d.floc, d.rloc) if side == LEFT else (d.rloc, d.floc)

    @staticmethod
    def _join(a, b, length, side):
        return CdawgDescriptor(a, b, length) if side == LEFT else CdawgDescriptor(b, a, length)

    def _check_symbol(self, c):
        if not 0 <= c <= self.sigma:
            raise InvalidSymbolError(f"symbol {c} outside [0..{self.sigma}]")

    def extend(self, d, side, c):
        side = normalize_side(side)
        self._check_symbol(c)
        if c == TERMINATOR:
            raise NotFoundError("substrings never contain the terminator")
        A, B = self._sides[side]
        a, b = self._split(d, side)
        a2 = A.weiner_link(a, c)
        b2 = b if d.length < b.strlen else B.child(b, c)
        return self._join(a2, b2, d.length + 1, side)

    def find(self, w):
        d = self._empty
        for c in reversed(bytes(w)):
            d = self.extend(d, LEFT, c)
        return d

    def is_maximal(self, d, side):
        side = normalize_side(side)
        _, B = self._sides[side]
        _, b = self._split(d, side)
        return d.length == b.strlen and b.node != B.sink

    def enumerate(self, d, side):
        side = normalize_side(side)
        A, B = self._sides[side]
        a, b = self._split(d, side)
        if d.length == b.strlen and b.node != B.sink:
            return B.children_symbols(b)
        return [A.rl.access(a.lo)]

    def unique_extension(self, d, side):
        side = normalize_side(side)
        A, _ = self._sides[side]
        a, _ = self._split(d, side)
        return A.rl.access(a.lo)

    def contract(self, d, side, strategy="theorem", trace=None):
        side = normalize_side(side)
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        if d.length == 0:
            raise EmptyDescriptorError("cannot contract the empty string")
        if d.length == 1:
            if trace is not None:
                trace.append("unit")
            return self._empty
        A, B = self._sides[side]
        a, b = self._split(d, side)
        length = d.length
        try:
            if strategy == "theorem" and length == a.strlen and a.node != A.sink:
                new_a = A.suffix_link(a)
                if trace is not None:
                    trace.append("right-maximal")
            else:
                new_a = self._contract_general(A, a, length, trace)
            if b.hi - b.lo == new_a.hi - new_a.lo:
                new_b = b
            else:
                new_b = B.parent(b)
                if new_b.hi - new_b.lo != new_a.hi - new_a.lo:
                    raise DescriptorError("mirrored locus does not match the contracted frequency")
        except TreeQueryError as exc:
            raise DescriptorError(f"descriptor inconsistent with index: {exc}") from None
        return self._join(new_a, new_b, length - 1, side)

    @staticmethod
    def _contract_general(A, v, length, trace):
        u = A.parent(v)
        u_link = A.root_id() if u.strlen == 0 else A.suffix_link(u)
        v_link = A.suffix_link(v)
        z = A.parent(v_link)
        if z == u_link:
            if trace is not None:
                trace.append("edge")
            return v_link
        if not A.is_rep(z):
            raise AssertionError("path case reached an ancestor that is not a maximal repeat")
        if length - 1 > z.strlen:
            if trace is not None:
                trace.append("path-below")
            return v_link
        if trace is not None:
            trace.append("path")
        return A.rep_id(A.weighted_ancestor(z.node, length - 1))

    def inc_to_maxrep(self, d):
        """Shortest maximal repeat containing ``W``: the class of its forward locus."""
        if d.length and d.freq == 1:
            raise NoMaximalRepeatError("a unique substring lies in no maximal repeat")
        z = d.floc.node
        return CdawgDescriptor(self.forward.rep_id(z),
                               self.backward.rep_id(self.forward.affix[z]),
                               self.forward.length[z])

    def dec_to_maxrep(self, d, side=LEFT):
        """Longest proper suffix (left) or prefix (right) of ``W`` that is a maximal repeat."""
        side = normalize_side(side)
        if d.length == 0:
            raise EmptyDescriptorError("the empty string has no proper suffix")
        A, B = self._sides[side]
        a, b = self._split(d, side)
        if d.length == a.strlen and a.node != A.sink:
            z = A.sl_arc[a.node]
            return self._join(A.rep_id(z), B.rep_id(A.affix[z]), A.length[z], side)
        x = B.parent(b)
        while not B.is_rep(x):
            x = B.parent(x)
        return self._join(A.rep_id(B.affix[x.node]), x, x.strlen, side)
