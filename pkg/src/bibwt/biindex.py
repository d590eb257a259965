"""Fully-functional bidirectional BWT index: extension, enumeration and contraction.

A substring ``W`` is handled through its :class:`Descriptor`, the triple of
its interval in ``BWT(T#)``, the interval of ``reverse(W)`` in
``BWT(reverse(T)#)`` and ``|W|``. Every operation is implemented once for
the left side of a generic text ``X``; right-side operations run the same
code on ``reverse(T)`` with the two intervals swapped.
"""

from typing import NamedTuple

from .errors import (DescriptorError, EmptyDescriptorError, InvalidSymbolError,
                     NoMaximalRepeatError, NotFoundError)
from ._backend import kernels
from .textcore import TERMINATOR, build_suffix_structures
from .topology import build_topologies

LEFT = "left"
RIGHT = "right"
STRATEGIES = ("theorem", "theorem-general", "practical")
_MODES = {name: i for i, name in enumerate(STRATEGIES)}
BRANCHES = ("unit", "right-maximal", "edge", "path-below", "path", "practical-level",
            "practical-direct")


class Interval(NamedTuple):
    lo: int
    hi: int

    @property
    def width(self):
        return self.hi - self.lo + 1


class Descriptor(NamedTuple):
    fwd: Interval
    rev: Interval
    length: int

    @property
    def freq(self):
        return self.fwd.hi - self.fwd.lo + 1


def normalize_side(side):
    s = side.lower() if isinstance(side, str) else side
    if s in ("l", "left"):
        return LEFT
    if s in ("r", "right"):
        return RIGHT
    raise ValueError(f"side must be left or right, got {side!r}")


class _View:
    """Everything needed to act on the left end of strings of one text ``X``."""

    __slots__ = ("arrays", "other_arrays", "strand", "other_strand")

    def __init__(self, arrays, other_arrays, strand, other_strand):
        self.arrays = arrays
        self.other_arrays = other_arrays
        self.strand = strand
        self.other_strand = other_strand


class BiIndex:
    """Bidirectional BWT index with constant-direction contraction on any substring."""

    name = "BWT"

    def __init__(self, text, ss=None, topo=None):
        self.text = text
        self.ss = ss if ss is not None else build_suffix_structures(text)
        self.topo = topo if topo is not None else build_topologies(self.ss)
        self.n = text.n
        self.sigma = text.sigma
        fwd, bwd = self.topo.forward, self.topo.backward
        self._views = {
            LEFT: _View(self.ss.fwd, self.ss.rev, fwd, bwd),
            RIGHT: _View(self.ss.rev, self.ss.fwd, bwd, fwd),
        }
        self._kernels = {}
        full = Interval(1, self.n)
        self._empty = Descriptor(full, full, 0)

    # -- descriptor plumbing -------------------------------------------------

    def empty(self):
        return self._empty

    def freq(self, d):
        return d.fwd.hi - d.fwd.lo + 1

    @staticmethod
    def _split(d, side):
        return (d.fwd, d.rev) if side == LEFT else (d.rev, d.fwd)

    @staticmethod
    def _join(a, b, length, side):
        return Descriptor(a, b, length) if side == LEFT else Descriptor(b, a, length)

    def validate(self, d):
        """Raise :class:`DescriptorError` on structurally impossible descriptors."""
        fwd, rev, length = d
        n = self.n
        if not (1 <= fwd.lo <= fwd.hi <= n and 1 <= rev.lo <= rev.hi <= n):
            raise DescriptorError(f"interval outside [1..{n}]: {d}")
        if fwd.hi - fwd.lo != rev.hi - rev.lo:
            raise DescriptorError(f"interval widths differ: {d}")
        if length < 0 or length > n - 1:
            raise DescriptorError(f"length {length} outside [0..{n - 1}]")
        if (length == 0) != (fwd.lo == 1 and fwd.hi == n):
            raise DescriptorError(f"only the empty string spans all rows: {d}")
        if fwd.lo == fwd.hi:
            sa = self.ss.fwd.sa
            if length > n - sa[fwd.lo]:
                raise DescriptorError(f"length {length} exceeds the suffix at row {fwd.lo}")

    def _check_symbol(self, c):
        if not 0 <= c <= self.sigma:
            raise InvalidSymbolError(f"symbol {c} outside [0..{self.sigma}]")

    # -- extension -----------------------------------------------------------

    def extend(self, d, side, c):
        """Descriptor of ``cW`` (left) or ``Wc`` (right); ``NotFoundError`` if absent."""
        side = normalize_side(side)
        self._check_symbol(c)
        if c == TERMINATOR:
            raise NotFoundError("substrings never contain the terminator")
        a, b = self._split(d, side)
        bwt = self._views[side].arrays.bwt
        lo, hi = a
        k_lo = bwt.rank(c, lo - 1)
        k_hi = bwt.rank(c, hi)
        if k_hi == k_lo:
            raise NotFoundError(f"extension by symbol {c} does not occur")
        base = bwt.C[c]
        new_a = Interval(base + k_lo + 1, base + k_hi)
        start = b.lo + bwt.count_less(c, lo, hi)
        new_b = Interval(start, start + k_hi - k_lo - 1)
        return self._join(new_a, new_b, d.length + 1, side)

    def find(self, w):
        """Descriptor of symbol string ``w`` by backward search."""
        d = self._empty
        for c in reversed(bytes(w)):
            d = self.extend(d, LEFT, c)
        return d

    def enumerate(self, d, side):
        """Sorted symbols ``c`` with ``cW`` (left) or ``Wc`` (right) occurring; may include ``#``."""
        side = normalize_side(side)
        a, _ = self._split(d, side)
        return self._views[side].arrays.bwt.distinct(a.lo, a.hi)

    def is_maximal(self, d, side):
        side = normalize_side(side)
        a, _ = self._split(d, side)
        return self._views[side].arrays.bwt.has_multiple(a.lo, a.hi)

    # -- contraction ---------------------------------------------------------

    def contract(self, d, side, strategy="theorem", trace=None):
        """Descriptor of ``W`` from ``aW`` (left) or ``Wa`` (right).

        ``strategy`` selects the locus search for the shortened string:
        ``"theorem"`` shortcuts right-maximal inputs through one suffix link
        and otherwise decides between edge and path projection;
        ``"theorem-general"`` always runs the edge/path decision;
        ``"practical"`` goes through the lowest maximal-repeat ancestor of
        the suffix-link target. Branch names are appended to ``trace``.
        """
        side = normalize_side(side)
        mode = _MODES.get(strategy)
        if mode is None:
            raise ValueError(f"unknown strategy {strategy!r}")
        if d.length == 0:
            raise EmptyDescriptorError("cannot contract the empty string")
        self.validate(d)
        if d.length == 1:
            if trace is not None:
                trace.append("unit")
            return self._empty
        a, b = self._split(d, side)
        try:
            lo, hi, blo, bhi, branch = self._kernel(side).contract(
                a.lo, a.hi, b.lo, b.hi, d.length, mode)
        except ValueError as exc:
            raise DescriptorError(f"descriptor inconsistent with index: {exc}") from None
        if trace is not None:
            trace.append(BRANCHES[branch])
        return self._join(Interval(lo, hi), Interval(blo, bhi), d.length - 1, side)

    def _kernel(self, side):
        k = self._kernels.get(side)
        if k is None:
            k = self._kernels[side] = _contraction_kernel(self._views[side])
        return k

    @staticmethod
    def _maxrep_prefix_node(strand, z, length):
        """ST locus of the length-``length`` prefix of maximal repeat ``z``."""
        slt = strand.slt.tree
        x = slt.level_ancestor(strand.commute(z, "st_to_slt"), length)
        y = x if slt.is_marked(x) else slt.next_marked(x)
        return strand.commute(y, "slt_to_st")

    # -- jumps used by matching statistics and order changes -------------------

    def suffix_jump(self, a, length, p, side=LEFT):
        """Interval of the length-``p`` suffix of the string with interval ``a``.

        The suffix must be a maximal repeat. Takes ``length - p`` suffix links
        from the locus, then the lowest maximal-repeat ancestor and a level
        ancestor query. Returns ``(interval, suffix_links_taken)``.
        """
        if p == 0:
            return Interval(1, self.n), 0
        strand = self._views[side].strand
        st = strand.st
        v = st.locus(a.lo, a.hi)
        for _ in range(length - p):
            v = st.suffix_link(v)
        z = st.tree.lowest_marked_ancestor(v)
        y = self._maxrep_prefix_node(strand, z, p)
        return Interval(*st.interval(y)), length - p

    def dec_to_maxrep(self, d, side=LEFT):
        """Longest proper suffix (left) or prefix (right) of ``W`` that is a maximal repeat."""
        side = normalize_side(side)
        if d.length == 0:
            raise EmptyDescriptorError("the empty string has no proper suffix")
        view = self._views[side]
        a, b = self._split(d, side)
        other = view.other_strand
        st = other.st
        w = st.locus(b.lo, b.hi)
        x = st.tree.lowest_marked_ancestor(st.tree.parent(w))
        p = other.max_rep_length(x)
        if p == 0:
            return self._empty
        new_a, _ = self.suffix_jump(a, d.length, p, side)
        return self._join(new_a, Interval(*st.interval(x)), p, side)

    def inc_to_maxrep(self, d):
        """Shortest maximal repeat containing ``W`` (it has the same frequency)."""
        from .dbg import extend_same_frequency

        if d.length and self.freq(d) == 1:
            raise NoMaximalRepeatError("a unique substring lies in no maximal repeat")
        d = extend_same_frequency(self, d, RIGHT)
        return extend_same_frequency(self, d, LEFT)

    def unique_extension(self, d, side):
        """The only symbol extending ``W`` on ``side``; caller ensures it is unique."""
        side = normalize_side(side)
        a, _ = self._split(d, side)
        return self._views[side].arrays.bwt[a.lo]

    # -- loci ---------------------------------------------------------------

    def locus(self, d, side=LEFT):
        """ST node of ``W`` (left) or rev-ST node of ``reverse(W)`` (right)."""
        side = normalize_side(side)
        a, _ = self._split(d, side)
        return self._views[side].strand.st.locus(a.lo, a.hi)


def _contraction_kernel(view, impl=None):
    """Flatten the trees of ``view`` into a ``ContractionKernel`` of ``impl`` (default backend)."""
    impl = impl or kernels
    strand = view.strand
    st, slt = strand.st.tree, strand.slt.tree
    arrays = view.arrays
    marks = [0] + st.marks.bits()
    st_to_slt = [0] * (st.size + 1)
    slt_to_st = [0] * (slt.size + 1)
    for v in range(1, st.size + 1):
        if marks[v]:
            x = strand.commute(v, "st_to_slt")
            st_to_slt[v] = x
            slt_to_st[x] = v
    bd_nodes = []
    bd_start = [0]
    for row in slt._by_depth:
        bd_nodes.extend(row)
        bd_start.append(len(bd_nodes))
    bd_start.append(len(bd_nodes))
    other = view.other_arrays.bwt.symbols
    heads = [0, 0]
    for p in range(1, len(other)):
        heads.append(heads[-1] + (other[p] != other[p - 1]))
    flat = impl.FlatTree
    return impl.ContractionKernel(
        flat(*st.flat_tables()), flat(*view.other_strand.st.tree.flat_tables()),
        marks, st._lma, arrays.sa, arrays.isa,
        st_to_slt, slt._depth, bd_nodes, bd_start, slt.next_marked_table(), slt_to_st, heads)
