"""Shared generators and naive reference structures for the test suite."""

import random
from collections import Counter
from functools import lru_cache

from bibwt.biindex import BiIndex, Descriptor, Interval
from bibwt.cdawg import CdawgIndex
from bibwt.textcore import build_suffix_structures, build_text
from bibwt.topology import build_topologies

# one summary line per acceptance criterion, printed at the end of the run
ACCEPTANCE = []

ALPHABETS = {2: b"ab", 4: b"acgt", 8: b"abcdefgh"}


def random_bytes(rng, n, sigma):
    alpha = ALPHABETS[sigma]
    return bytes(rng.choice(alpha) for _ in range(n))


def repetitive_bytes(rng, n, sigma):
    """Text built from a few copied blocks, so it has long maximal repeats."""
    alpha = ALPHABETS[sigma]
    seed = bytes(rng.choice(alpha) for _ in range(rng.randint(1, 12)))
    out = bytearray()
    while len(out) < n:
        if out and rng.random() < 0.5:
            i = rng.randrange(len(out))
            out += out[i:i + rng.randint(1, 20)]
        else:
            out += seed
        if rng.random() < 0.2:
            out.append(rng.choice(alpha))
    return bytes(out[:n])


class Engines:
    """Both engines over one text, sharing suffix structures."""

    def __init__(self, raw):
        self.text = build_text(raw)
        self.ss = build_suffix_structures(self.text)
        self.topo = build_topologies(self.ss)
        self.bi = BiIndex(self.text, self.ss, self.topo)
        self.cd = CdawgIndex(self.text, self.ss, self.topo)


@lru_cache(maxsize=32)
def engines(raw):
    return Engines(raw)


def key(d):
    """Engine-independent view of a descriptor."""
    return tuple(d.fwd), tuple(d.rev), d.length


def substrings(body):
    return {body[i:j] for i in range(len(body)) for j in range(i + 1, len(body) + 1)}


def kmer_counter(body, k):
    return Counter(body[i:i + k] for i in range(len(body) - k + 1))


class IntervalOracle:
    """Intervals of every substring occurrence, from a plain sort of all suffixes.

    ``fwd[i][L]`` is the interval of ``body[i:i+L]`` in the sorted suffixes of
    ``T#``; ``rev`` is the same table for ``reverse(T)#``.
    """

    def __init__(self, symbols):
        self.symbols = symbols
        self.body = symbols[:-1]
        self.fwd = self._table(symbols)
        self.rev = self._table(self.body[::-1] + b"\x00")

    @staticmethod
    def _table(symbols):
        n = len(symbols)
        order = sorted(range(n), key=lambda p: symbols[p:])
        rows = [0] * n
        for r, p in enumerate(order):
            rows[p] = r + 1
        lcp = [0] * (n + 2)
        for r in range(1, n):
            a, b = symbols[order[r - 1]:], symbols[order[r]:]
            h = 0
            while h < len(a) and h < len(b) and a[h] == b[h]:
                h += 1
            lcp[r + 1] = h  # between rows r and r + 1 (1-based)
        table = []
        for p in range(n - 1):
            lo = hi = rows[p]
            longest = n - 1 - p
            ivs = [None] * (longest + 1)
            for L in range(longest, 0, -1):
                while lo > 1 and lcp[lo] >= L:
                    lo -= 1
                while hi < n and lcp[hi + 1] >= L:
                    hi += 1
                ivs[L] = (lo, hi)
            table.append(ivs)
        return table

    def descriptor(self, i, L):
        n = len(self.symbols)
        if L == 0:
            full = Interval(1, n)
            return Descriptor(full, full, 0)
        m = len(self.body)
        return Descriptor(Interval(*self.fwd[i][L]), Interval(*self.rev[m - i - L][L]), L)


def rng_for(name, salt=0):
    return random.Random(f"{name}:{salt}")


def random_script(rng, text, length=60):
    body = text.decode(text.body).decode("latin-1")
    alpha = text.alphabet.decode("latin-1")
    lines = []
    for _ in range(length):
        r = rng.random()
        side = rng.choice("LR")
        if r < 0.1:
            i = rng.randrange(len(body))
            lines.append("FIND " + body[i:i + rng.randint(1, 6)])
        elif r < 0.35:
            lines.append(f"EXT {side} {rng.choice(alpha)}")
        elif r < 0.55:
            lines.append(f"CTR {side}")
        elif r < 0.62:
            lines.append(f"ENUM {side}")
        elif r < 0.67:
            lines.append(f"MAXIMAL {side}")
        elif r < 0.7:
            lines.append("FREQ")
        elif r < 0.73:
            lines.append("START")
        elif r < 0.76:
            lines.append("MS " + "".join(rng.choice(alpha) for _ in range(8)))
        else:
            lines.append(rng.choice([
                f"DBG ARCS {side}", f"DBG ARCS {side} COMPLETE",
                f"DBG FOLLOW {side} {rng.choice(alpha)}", "DBG INC FREQ", "DBG INC MAXREP",
                "DBG DEC UNIT", "DBG DEC FREQ", "DBG DEC MAXREP", f"DBG INC {rng.choice(alpha)}",
            ]))
    return lines
