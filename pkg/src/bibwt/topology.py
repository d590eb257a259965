"""Suffix-tree and suffix-link-tree topologies with maximal-repeat marks.

For a text ``X`` a :class:`Strand` bundles the suffix tree of ``X#`` and the
suffix-link tree of the suffix tree of ``reverse(X)#``; the latter is a trie
of the left-maximal substrings of ``X`` in which a node's depth equals the
length of its label. A :class:`TopologyPair` holds the strand of ``T``
(forward) and that of ``reverse(T)`` (backward).
"""

from dataclasses import dataclass

from ._backend import kernels
from .errors import TreeQueryError
from .succinct import BpTree


class StTopology:
    """Suffix-tree shape whose ``i``-th leaf in preorder is suffix-array row ``i``."""

    def __init__(self, arrays, parens=None, marks=None):
        self.arrays = arrays
        if parens is None:
            parens = kernels.lcp_interval_parens(arrays.lcp[1:])
        tree = BpTree(parens)
        if marks is None:
            bwt = arrays.bwt
            marks = [0] * (tree.size + 1)
            for v in range(1, tree.size + 1):
                lo, hi = tree.leftmost_leaf(v), tree.rightmost_leaf(v)
                if lo < hi and bwt.has_multiple(lo, hi):
                    marks[v] = 1
            marks = marks[1:]
        tree.attach_marks(marks)
        self.tree = tree

    @property
    def root(self):
        return 1

    def interval(self, v):
        t = self.tree
        return t.leftmost_leaf(v), t.rightmost_leaf(v)

    def locus(self, lo, hi):
        if hi < lo:
            raise TreeQueryError("locus of an empty interval")
        t = self.tree
        return t.lca(t.select_leaf(lo), t.select_leaf(hi))

    def suffix_link(self, v):
        """Node labelled ``label(v)[2..]``; leaves map to the leaf of the next suffix."""
        if v == 1:
            raise TreeQueryError("root has no suffix link")
        t = self.tree
        sa, isa = self.arrays.sa, self.arrays.isa
        lo, hi = t.leftmost_leaf(v), t.rightmost_leaf(v)
        a, b = sa[lo] + 1, sa[hi] + 1
        n = len(sa) - 1
        if a > n or b > n:
            raise TreeQueryError("suffix link of the terminator leaf")
        x = t.select_leaf(isa[a])
        if lo == hi:
            return x
        return t.lca(x, t.select_leaf(isa[b]))

    def is_leaf(self, v):
        return self.tree.is_leaf(v)


class SltTopology:
    """One-character-per-edge trie over left-maximal substrings, children in symbol order."""

    def __init__(self, tree, rev_st_nodes=None):
        self.tree = tree
        # slt node -> node of the reverse suffix tree it was built from
        self.rev_st_nodes = rev_st_nodes

    @classmethod
    def from_reverse_st(cls, rev_st):
        """Suffix-link tree of ``rev_st``; returns the topology and the node map slt -> rev_st."""
        tree = rev_st.tree
        arrays = rev_st.arrays
        C = arrays.bwt.C
        internal = [v for v in range(1, tree.size + 1) if not tree.is_leaf(v)]
        children = {}
        for v in internal:
            if v == 1:
                continue
            lo = tree.leftmost_leaf(v)
            # first symbol of the label: the F-column symbol of row lo
            c = _f_symbol(C, lo)
            children.setdefault(rev_st.suffix_link(v), []).append((c, v))
        order = {}
        for p, kids in children.items():
            kids.sort()
            order[p] = [v for _, v in kids]
        slt_to_st = [0]
        out = bytearray()
        stack = [(1, False)]
        while stack:
            v, done = stack.pop()
            if done:
                out.append(0)
                continue
            out.append(1)
            slt_to_st.append(v)
            stack.append((v, True))
            for c in reversed(order.get(v, ())):
                stack.append((c, False))
        marks = [tree.marks[v] for v in slt_to_st[1:]]
        return cls(BpTree(bytes(out), marks), slt_to_st), slt_to_st


def _f_symbol(C, row):
    c = 0
    while C[c + 1] < row:
        c += 1
    return c


@dataclass
class Strand:
    """ST of one text plus the suffix-link trie of its reverse."""

    st: StTopology
    slt: SltTopology

    def max_rep_length(self, v):
        """Length of the maximal repeat at marked suffix-tree node ``v``."""
        return self.slt.tree.depth(self.commute(v, "st_to_slt"))

    def commute(self, v, direction):
        st, slt = self.st.tree, self.slt.tree
        if direction == "st_to_slt":
            return slt.select_marked(st.marked_rank(v))
        if direction == "slt_to_st":
            return st.select_marked(slt.marked_rank(v))
        raise ValueError(f"unknown direction {direction!r}")


@dataclass
class TopologyPair:
    forward: Strand
    backward: Strand

    def max_rep_length(self, v):
        return self.forward.max_rep_length(v)

    def suffix_link_node(self, v):
        return self.forward.st.suffix_link(v)

    def commute(self, v, direction):
        return self.forward.commute(v, direction)


def build_topologies(ss):
    st_f = StTopology(ss.fwd)
    st_b = StTopology(ss.rev)
    slt_f, _ = SltTopology.from_reverse_st(st_b)
    slt_b, _ = SltTopology.from_reverse_st(st_f)
    return TopologyPair(Strand(st_f, slt_f), Strand(st_b, slt_b))

