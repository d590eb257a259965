"""Infinite-order, frequency-aware, bidirectional de Bruijn graph over a bidirectional index.

The functions take any engine exposing the bidirectional-index surface
(:class:`~bibwt.biindex.BiIndex` or :class:`~bibwt.cdawg.CdawgIndex`).
A node of order ``k`` is a :class:`DbgHandle` wrapping the descriptor of its
``k``-mer. Arcs labelled by the terminator are reported (symbol ``0``) so
callers can decide whether to switch order on them.
"""

from typing import Any, NamedTuple

from .biindex import LEFT, RIGHT, normalize_side
from .errors import EmptyDescriptorError, NotFoundError
from .textcore import TERMINATOR

OCCURRING = "occurring"
COMPLETE = "complete"
MODES = ("inc_unit", "dec_unit", "inc_freq", "dec_freq", "inc_maxrep", "dec_maxrep")


class DbgHandle(NamedTuple):
    d: Any
    k: int

    @property
    def freq(self):
        return self.d.freq


class DbgArc(NamedTuple):
    d: Any  # descriptor of the (k+1)-mer, None when it does not occur
    label: int
    variant: str
    freq: int


def _opposite(side):
    return RIGHT if side == LEFT else LEFT


def _check_variant(variant):
    if variant not in (OCCURRING, COMPLETE):
        raise ValueError(f"unknown arc variant {variant!r}")


def handle(d):
    return DbgHandle(d, d.length)


def node(engine, kmer):
    """Membership: handle of ``kmer`` in the graph of order ``len(kmer)``."""
    return handle(engine.find(kmer))


def dbg_freq(x):
    """Occurrences of a node's k-mer or an arc's (k+1)-mer (0 for absent complete arcs)."""
    if isinstance(x, DbgArc):
        return x.freq
    return x.d.freq


def arcs(engine, h, side=RIGHT, variant=OCCURRING):
    """Labels of the arcs leaving ``h`` on ``side``; ``len()`` of the result is the degree."""
    side = normalize_side(side)
    _check_variant(variant)
    if variant == OCCURRING:
        return frozenset(engine.enumerate(h.d, side))
    base = engine.contract(h.d, _opposite(side)) if h.k else h.d
    return frozenset(c for c in engine.enumerate(base, side) if c != TERMINATOR)


def arc(engine, h, side, c, variant=OCCURRING):
    """The arc spelling ``l(h)c`` (right) or ``cl(h)`` (left)."""
    side = normalize_side(side)
    _check_variant(variant)
    try:
        d = engine.extend(h.d, side, c)
    except NotFoundError:
        if variant == OCCURRING:
            raise
        if c not in arcs(engine, h, side, COMPLETE):
            raise
        return DbgArc(None, c, variant, 0)
    return DbgArc(d, c, variant, d.freq)


def follow(engine, h, side, c, variant=OCCURRING):
    """Move along the arc labelled ``c``; returns ``(handle, arc)`` at the same order."""
    side = normalize_side(side)
    _check_variant(variant)
    if variant == OCCURRING:
        ext = engine.extend(h.d, side, c)
        d = engine.contract(ext, _opposite(side))
        return handle(d), DbgArc(ext, c, variant, ext.freq)
    base = engine.contract(h.d, _opposite(side)) if h.k else h.d
    d = engine.extend(base, side, c)
    if h.k == 0:
        d = engine.contract(d, _opposite(side))
    return handle(d), arc(engine, h, side, c, COMPLETE)


def extend_same_frequency(engine, d, side):
    """Longest extension of ``W`` on ``side`` that keeps its frequency."""
    side = normalize_side(side)
    while not engine.is_maximal(d, side):
        c = engine.unique_extension(d, side)
        if c == TERMINATOR:
            break
        d = engine.extend(d, side, c)
    return d


def shrink_until_frequency_changes(engine, d, side):
    """Longest prefix (right) or suffix (left) of ``W`` with a different frequency."""
    side = normalize_side(side)
    if d.length == 0:
        raise EmptyDescriptorError("order is already 0")
    f = d.freq
    while True:
        d = engine.contract(d, side)
        if d.freq != f:
            return d


def change_order(engine, h, mode, side=None, symbol=None, hidden=False):
    """Apply an order change and return ``(handle, k')``, or just the handle when ``hidden``.

    Modes: ``inc_unit`` (needs ``symbol``), ``dec_unit``, ``inc_freq``,
    ``dec_freq``, ``inc_maxrep`` and ``dec_maxrep``. ``side`` defaults to
    right, except ``dec_maxrep`` which defaults to left (longest
    maximal-repeat suffix).
    """
    if mode not in MODES:
        raise ValueError(f"unknown order change {mode!r}")
    if side is None:
        side = LEFT if mode == "dec_maxrep" else RIGHT
    side = normalize_side(side)
    d = h.d
    if mode == "inc_unit":
        if symbol is None:
            raise ValueError("inc_unit needs a symbol")
        d = engine.extend(d, side, symbol)
    elif mode == "dec_unit":
        d = engine.contract(d, side)
    elif mode == "inc_freq":
        d = extend_same_frequency(engine, d, side)
    elif mode == "dec_freq":
        d = shrink_until_frequency_changes(engine, d, side)
    elif mode == "inc_maxrep":
        d = engine.inc_to_maxrep(d)
    else:
        d = engine.dec_to_maxrep(d, side)
    out = handle(d)
    return out if hidden else (out, out.k)
