"""Matching statistics of a query against the indexed text.

``values[i]`` is the length of the longest prefix of ``S[i:]`` occurring in
the text. The eager strategy drops one symbol from the left per mismatch;
the lazy strategy walks the reverse suffix tree to the next maximal-repeat
ancestor and resynchronizes the forward interval with a batch of suffix
links followed by a level-ancestor query.
"""

from typing import List, NamedTuple

from .biindex import LEFT, RIGHT
from .errors import NotFoundError


class MsResult(NamedTuple):
    values: List[int]
    contractions: int


def _encode_query(index, s):
    """Symbol codes for ``s``; bytes outside the alphabet become ``None``."""
    if isinstance(s, str):
        s = s.encode("latin-1")
    codes = {ch: i + 1 for i, ch in enumerate(index.text.alphabet)}
    return [codes.get(ch) for ch in bytes(s)]


def _try_extend(index, d, c):
    if c is None:
        return None
    try:
        return index.extend(d, RIGHT, c)
    except NotFoundError:
        return None


def matching_statistics(index, s, strategy="lazy"):
    """Return :class:`MsResult` for query ``s`` (raw bytes or str)."""
    if strategy not in ("eager", "lazy"):
        raise ValueError(f"unknown strategy {strategy!r}")
    q = _encode_query(index, s)
    if strategy == "eager":
        return _eager(index, q)
    return _lazy(index, q)


def _eager(index, q):
    m = len(q)
    values = [0] * m
    d = index.empty()
    i = j = 0
    steps = 0
    while j < m:
        e = _try_extend(index, d, q[j])
        if e is not None:
            d = e
            j += 1
            continue
        if d.length == 0:
            values[i] = 0
            i += 1
            j += 1
            continue
        values[i] = d.length
        d = index.contract(d, LEFT)
        steps += 1
        i += 1
    for k in range(i, m):
        values[k] = m - k
    return MsResult(values, steps)


def _lazy(index, q):
    m = len(q)
    values = [0] * m
    bwd = index.topo.backward
    rev_st = bwd.st
    rev_tree = rev_st.tree
    rev_bwt = index.ss.rev.bwt
    d = index.empty()
    i = j = 0
    steps = 0
    while j < m:
        c = q[j]
        e = _try_extend(index, d, c)
        if e is not None:
            d = e
            j += 1
            continue
        length = d.length
        if length == 0:
            values[i] = 0
            i += 1
            j += 1
            continue
        # maximal-repeat ancestors of reverse(W) are the only suffixes of W
        # whose right-extension sets grow
        w = rev_st.locus(d.rev.lo, d.rev.hi)
        x = rev_tree.lowest_marked_ancestor(rev_tree.parent(w))
        while True:
            lo, hi = rev_st.interval(x)
            if c is not None and rev_bwt.count(c, lo, hi):
                break
            if x == rev_st.root:
                x = None
                break
            x = rev_tree.lowest_marked_ancestor(rev_tree.parent(x))
        if x is None:
            p = 0
        else:
            p = bwd.max_rep_length(x)
        start = j - p
        for k in range(i, start):
            values[k] = j - k
        i = start
        if p == 0:
            d = index.empty()
            continue
        fwd, links = index.suffix_jump(d.fwd, length, p, LEFT)
        steps += links
        d = type(d)(fwd, type(d.rev)(lo, hi), p)
    for k in range(i, m):
        values[k] = m - k
    return MsResult(values, steps)
