"""Rank/select bitvectors, character-rank sequences and balanced-parentheses trees.

Positions follow the 1-based convention used throughout the package:
``rank1(i)`` counts set bits in ``[1..i]`` and tree nodes are identified by
their 1-based preorder rank.
"""

from bisect import bisect_left, bisect_right

from ._backend import kernels
from .errors import InvalidSymbolError, OutOfRangeError, TreeQueryError

_WORD = 64
_WORDS_PER_SUPER = 8


class BitVec:
    """Static bitvector with a two-level rank directory and select by search."""

    __slots__ = ("n", "ones", "_words", "_super", "_block")

    def __init__(self, bits):
        bits = bytes(1 if b else 0 for b in bits)
        self.n = len(bits)
        nwords = self.n // _WORD + 1
        words = [0] * nwords
        for p, b in enumerate(bits):
            if b:
                words[p >> 6] |= 1 << (p & 63)
        self._words = words
        sup = []
        block = []
        total = 0
        within = 0
        for w in range(nwords):
            if w % _WORDS_PER_SUPER == 0:
                sup.append(total)
                within = 0
            block.append(within)
            c = words[w].bit_count()
            within += c
            total += c
        self._super = sup
        self._block = block
        self.ones = total

    def __len__(self):
        return self.n

    def __getitem__(self, p):
        if not 1 <= p <= self.n:
            raise OutOfRangeError(f"bit position {p} outside [1..{self.n}]")
        p -= 1
        return (self._words[p >> 6] >> (p & 63)) & 1

    def rank1(self, i):
        if not 0 <= i <= self.n:
            raise OutOfRangeError(f"rank1 argument {i} outside [0..{self.n}]")
        w = i >> 6
        r = i & 63
        res = self._super[w >> 3] + self._block[w]
        if r:
            res += (self._words[w] & ((1 << r) - 1)).bit_count()
        return res

    def rank0(self, i):
        return i - self.rank1(i)

    def select1(self, k):
        if not 1 <= k <= self.ones:
            raise OutOfRangeError(f"select1 argument {k} outside [1..{self.ones}]")
        s = bisect_left(self._super, k) - 1
        w = s * _WORDS_PER_SUPER
        remaining = k - self._super[s]
        last = min(len(self._words), w + _WORDS_PER_SUPER)
        while w < last:
            c = self._words[w].bit_count()
            if remaining <= c:
                break
            remaining -= c
            w += 1
        word = self._words[w]
        for _ in range(remaining - 1):
            word &= word - 1
        return w * _WORD + (word & -word).bit_length()

    def to_bytes(self):
        """Packed little-endian bit payload (length not included)."""
        nbytes = (self.n + 7) // 8
        out = bytearray(nbytes)
        for p in range(self.n):
            if (self._words[p >> 6] >> (p & 63)) & 1:
                out[p >> 3] |= 1 << (p & 7)
        return bytes(out)

    @classmethod
    def from_bytes(cls, payload, n):
        return cls((payload[p >> 3] >> (p & 7)) & 1 for p in range(n))

    def bits(self):
        return [self[p] for p in range(1, self.n + 1)]


class CharSeq:
    """Sequence over ``[0..sigma]`` with sampled per-symbol rank.

    ``C[c]`` is the number of symbols strictly smaller than ``c``.
    """

    _STEP = 64

    def __init__(self, symbols, sigma):
        symbols = bytes(symbols)
        self.symbols = symbols
        self.n = len(symbols)
        self.sigma = sigma
        if symbols and max(symbols) > sigma:
            raise InvalidSymbolError(f"symbol {max(symbols)} exceeds sigma={sigma}")
        step = self._STEP
        nblocks = self.n // step + 1
        samples = []
        counts = [0] * (sigma + 1)
        for c in range(sigma + 1):
            row = [0] * nblocks
            acc = 0
            for b in range(1, nblocks):
                acc += symbols.count(c, (b - 1) * step, b * step)
                row[b] = acc
            samples.append(row)
            counts[c] = symbols.count(c)
        self._samples = samples
        self.occ = counts
        C = [0] * (sigma + 2)
        for c in range(sigma + 1):
            C[c + 1] = C[c] + counts[c]
        self.C = C
        heads = [1] * self.n
        for i in range(1, self.n):
            heads[i] = 1 if symbols[i] != symbols[i - 1] else 0
        self.run_heads = BitVec(heads)

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.symbols[i - 1]

    def _check_symbol(self, c):
        if not 0 <= c <= self.sigma:
            raise InvalidSymbolError(f"symbol {c} outside [0..{self.sigma}]")

    def rank(self, c, i):
        """Occurrences of ``c`` in positions ``[1..i]``."""
        self._check_symbol(c)
        if not 0 <= i <= self.n:
            raise OutOfRangeError(f"rank argument {i} outside [0..{self.n}]")
        b = i >> 6
        return self._samples[c][b] + self.symbols.count(c, b << 6, i)

    def count(self, c, lo, hi):
        """Occurrences of ``c`` in ``[lo..hi]``."""
        return self.rank(c, hi) - self.rank(c, lo - 1)

    def select(self, c, k):
        """Position of the ``k``-th occurrence of ``c``."""
        self._check_symbol(c)
        if not 1 <= k <= self.occ[c]:
            raise OutOfRangeError(f"select({c}, {k}) beyond {self.occ[c]} occurrences")
        row = self._samples[c]
        b = bisect_left(row, k) - 1
        seen = row[b]
        pos = (b << 6) - 1
        while seen < k:
            pos = self.symbols.index(c, pos + 1)
            seen += 1
        return pos + 1

    def count_less(self, c, lo, hi):
        """Number of symbols smaller than ``c`` within ``[lo..hi]``."""
        if c <= self.sigma // 2:
            return sum(self.count(b, lo, hi) for b in range(c) if self.occ[b])
        bigger = sum(self.count(b, lo, hi) for b in range(c, self.sigma + 1) if self.occ[b])
        return hi - lo + 1 - bigger

    def distinct(self, lo, hi):
        """Sorted distinct symbols in ``[lo..hi]``."""
        if hi < lo:
            return []
        if hi - lo < 4 * (self.sigma + 1):
            return sorted(set(self.symbols[lo - 1:hi]))
        return [c for c in range(self.sigma + 1) if self.occ[c] and self.count(c, lo, hi)]

    def has_multiple(self, lo, hi):
        """True iff ``[lo..hi]`` holds at least two distinct symbols."""
        return self.run_heads.rank1(hi) - self.run_heads.rank1(lo) > 0

    def runs(self):
        return self.run_heads.ones


class BpTree:
    """Ordinal tree stored as balanced parentheses (``1`` opens, ``0`` closes).

    Depth and level-ancestor arguments count edges from the root.
    """

    def __init__(self, parens, marks=None):
        parens = bytes(parens)
        self.parens = parens
        (self._parent, self._depth, self._open, self._close, self._lbefore,
         self._nleaves, self._leaf_ids, euler) = kernels.bp_tables(parens)
        self.size = len(parens) // 2
        self._euler = euler
        depth = self._depth
        self._rmq = kernels.sparse_table_argmin([depth[v] for v in euler])
        by_depth = {}
        for v in range(1, self.size + 1):
            by_depth.setdefault(depth[v], []).append(v)
        self._by_depth = [by_depth[d] for d in range(len(by_depth))]
        self.marks = None
        self._lma = None
        if marks is not None:
            self.attach_marks(marks)

    @classmethod
    def from_parent_children(cls, children, root=0):
        """Build from an explicit child-list mapping (used by tests and builders)."""
        out = bytearray()
        stack = [(root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                out.append(0)
                continue
            out.append(1)
            stack.append((v, True))
            for c in reversed(children.get(v, ())):
                stack.append((c, False))
        return cls(bytes(out))

    def attach_marks(self, marks):
        if not isinstance(marks, BitVec):
            marks = BitVec(marks)
        if len(marks) != self.size:
            raise TreeQueryError("mark bitvector length differs from node count")
        self.marks = marks
        lma = [0] * (self.size + 1)
        parent = self._parent
        for v in range(1, self.size + 1):
            lma[v] = v if marks[v] else lma[parent[v]]
        self._lma = lma

    def __len__(self):
        return self.size

    def flat_tables(self):
        """Arguments for a kernel ``FlatTree`` over this tree."""
        return (self._parent, self._depth, self._open, self._lbefore, self._nleaves,
                self._leaf_ids, self._euler, self._rmq)

    def next_marked_table(self):
        """``table[v]`` = first marked node at or after ``v`` in preorder, 0 if none."""
        table = [0] * (self.size + 2)
        nxt = 0
        for v in range(self.size, 0, -1):
            if self.marks[v]:
                nxt = v
            table[v] = nxt
        return table

    def _check(self, v):
        if not 1 <= v <= self.size:
            raise TreeQueryError(f"node {v} outside [1..{self.size}]")

    @property
    def num_leaves(self):
        return len(self._leaf_ids)

    def parent(self, v):
        self._check(v)
        p = self._parent[v]
        if p == 0:
            raise TreeQueryError("root has no parent")
        return p

    def depth(self, v):
        self._check(v)
        return self._depth[v]

    def is_leaf(self, v):
        self._check(v)
        return self._nleaves[v] == 1 and self._close[v] == self._open[v] + 1

    def lca(self, v, w):
        self._check(v)
        self._check(w)
        x = self._open[v]
        y = self._open[w]
        if x > y:
            x, y = y, x
        k = (y - x + 1).bit_length() - 1
        level = self._rmq[k]
        a = level[x]
        b = level[y - (1 << k) + 1]
        depth = self._depth
        euler = self._euler
        return euler[a] if depth[euler[a]] <= depth[euler[b]] else euler[b]

    def level_ancestor(self, v, d):
        self._check(v)
        if not 0 <= d <= self._depth[v]:
            raise TreeQueryError(f"level {d} outside [0..{self._depth[v]}] for node {v}")
        row = self._by_depth[d]
        return row[bisect_right(row, v) - 1]

    def leftmost_leaf(self, v):
        self._check(v)
        return self._lbefore[v] + 1

    def rightmost_leaf(self, v):
        self._check(v)
        return self._lbefore[v] + self._nleaves[v]

    def select_leaf(self, i):
        if not 1 <= i <= len(self._leaf_ids):
            raise TreeQueryError(f"leaf rank {i} outside [1..{len(self._leaf_ids)}]")
        return self._leaf_ids[i - 1]

    def subtree_size(self, v):
        self._check(v)
        return (self._close[v] - self._open[v] + 1) // 2

    def children(self, v):
        self._check(v)
        out = []
        pos = self._open[v] + 1
        close = self._close[v]
        while pos < close:
            c = self._euler[pos]
            out.append(c)
            pos = self._close[c] + 1
        return out

    def is_marked(self, v):
        self._check(v)
        if self.marks is None:
            raise TreeQueryError("no mark bitvector attached")
        return bool(self.marks[v])

    def lowest_marked_ancestor(self, v):
        self._check(v)
        if self._lma is None:
            raise TreeQueryError("no mark bitvector attached")
        a = self._lma[v]
        if a == 0:
            raise TreeQueryError(f"node {v} has no marked ancestor")
        return a

    def marked_rank(self, v):
        """1-based rank of marked node ``v`` among marked nodes in preorder."""
        if not self.is_marked(v):
            raise TreeQueryError(f"node {v} is not marked")
        return self.marks.rank1(v)

    def select_marked(self, k):
        return self.marks.select1(k)

    def next_marked(self, v):
        """First marked node at or after ``v`` in preorder."""
        self._check(v)
        k = self.marks.rank1(v - 1) + 1
        if k > self.marks.ones:
            raise TreeQueryError(f"no marked node at or after {v}")
        return self.marks.select1(k)
