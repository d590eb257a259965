"""Text encoding and suffix-array/BWT construction for T and its reverse, plus brute-force oracles.

Symbol strings are ``bytes`` over the dense alphabet ``[1..sigma]``; the
terminator ``#`` is symbol 0 and only ever appears as the last symbol of a
text.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from ._backend import kernels
from .errors import AlphabetOverflowError, InvalidSymbolError, TextError
from .succinct import CharSeq

TERMINATOR = 0
MAX_SIGMA = 255


@dataclass(frozen=True)
class Text:
    """``T#`` over ``[0..sigma]`` plus the byte alphabet it was encoded from."""

    symbols: bytes
    sigma: int
    alphabet: bytes
    records: tuple = field(default=(), compare=False)

    def __post_init__(self):
        s = self.symbols
        if len(s) < 2 or s[-1] != TERMINATOR or s.count(TERMINATOR) != 1:
            raise TextError("text must be nonempty and end with a single terminator")
        if len(self.alphabet) != self.sigma:
            raise TextError("alphabet size differs from sigma")

    @property
    def n(self):
        return len(self.symbols)

    @property
    def body(self):
        return self.symbols[:-1]

    def __getitem__(self, i):
        return self.symbols[i - 1]

    def encode(self, raw):
        """Map raw bytes to symbols; unmapped bytes raise ``InvalidSymbolError``."""
        table = self._codes()
        try:
            return bytes(table[b] for b in raw)
        except KeyError as exc:
            raise InvalidSymbolError(f"byte {exc.args[0]!r} not in the text alphabet") from None

    def decode(self, syms):
        return bytes(ord("#") if c == TERMINATOR else self.alphabet[c - 1] for c in syms)

    def symbol_char(self, c):
        return "#" if c == TERMINATOR else chr(self.alphabet[c - 1])

    def _codes(self):
        return {b: i + 1 for i, b in enumerate(self.alphabet)}

    def reversed(self):
        return Text(self.body[::-1] + b"\x00", self.sigma, self.alphabet)


def _from_body(body, records=()):
    if not body:
        raise TextError("empty effective text")
    used = sorted(set(body))
    if len(used) > MAX_SIGMA:
        raise AlphabetOverflowError(f"{len(used)} distinct symbols exceed {MAX_SIGMA}")
    code = {b: i + 1 for i, b in enumerate(used)}
    symbols = bytes(code[b] for b in body) + b"\x00"
    return Text(symbols, len(used), bytes(used), tuple(records))


def build_text(data, fmt="raw"):
    """Encode ``data`` as a :class:`Text`.

    Raw input drops one trailing line ending. FASTA records are concatenated
    in file order; their ``(name, start, end)`` spans are kept as metadata.
    """
    data = bytes(data)
    if fmt == "raw":
        if data.endswith(b"\r\n"):
            data = data[:-2]
        elif data.endswith(b"\n"):
            data = data[:-1]
        return _from_body(data)
    if fmt != "fasta":
        raise TextError(f"unknown input format {fmt!r}")
    body = bytearray()
    records = []
    name = None
    start = 0
    for line in data.splitlines():
        line = line.strip()
        if line.startswith(b">"):
            if name is not None:
                records.append((name, start + 1, len(body)))
            name = line[1:].decode("utf-8", "replace")
            start = len(body)
        elif line:
            if name is None:
                raise TextError("FASTA sequence data before the first header")
            body += line
    if name is not None:
        records.append((name, start + 1, len(body)))
    return _from_body(bytes(body), records)


def text_from_symbols(body, sigma=None):
    """Build a text directly from symbols in ``[1..sigma]`` (tests, generators)."""
    body = bytes(body)
    if not body or min(body) < 1:
        raise TextError("symbols must be nonempty and in [1..sigma]")
    sigma = sigma or max(body)
    return Text(body + b"\x00", sigma, bytes(range(97, 97 + sigma)) if sigma <= 26 else bytes(range(1, sigma + 1)))


@dataclass
class SuffixArrays:
    """Suffix array, inverse, LCP and BWT of one text, 1-based with a dummy slot 0."""

    symbols: bytes
    sa: list
    isa: list
    lcp: list
    bwt: CharSeq

    @property
    def n(self):
        return len(self.symbols)


def build_suffix_arrays(symbols, sigma, sa0=None):
    n = len(symbols)
    if sa0 is None:
        sa0 = kernels.suffix_array(symbols)
    lcp0 = kernels.lcp_kasai(symbols, sa0)
    sa = [0] + [p + 1 for p in sa0]
    isa = [0] * (n + 1)
    for i in range(1, n + 1):
        isa[sa[i]] = i
    bwt = bytes(symbols[p - 2] if p > 1 else symbols[n - 1] for p in sa[1:])
    return SuffixArrays(symbols, sa, isa, [0] + lcp0, CharSeq(bwt, sigma))


@dataclass
class SuffixStructures:
    text: Text
    fwd: SuffixArrays
    rev: SuffixArrays

    @property
    def n(self):
        return self.text.n

    sa = property(lambda self: self.fwd.sa)
    isa = property(lambda self: self.fwd.isa)
    bwt = property(lambda self: self.fwd.bwt)
    rev_sa = property(lambda self: self.rev.sa)
    rev_isa = property(lambda self: self.rev.isa)
    rev_bwt = property(lambda self: self.rev.bwt)


def build_suffix_structures(text, sa=None, rev_sa=None):
    """Suffix arrays and BWTs of ``T#`` and ``reverse(T)#``.

    ``sa``/``rev_sa`` may carry precomputed 0-based arrays (index loading).
    """
    fwd = build_suffix_arrays(text.symbols, text.sigma, sa)
    rev = build_suffix_arrays(text.reversed().symbols, text.sigma, rev_sa)
    return SuffixStructures(text, fwd, rev)


# ---------------------------------------------------------------------------
# brute-force oracles

@lru_cache(maxsize=64)
def _sorted_suffixes(symbols):
    n = len(symbols)
    order = sorted(range(n), key=lambda p: symbols[p:])
    return [symbols[p:] for p in order], [p + 1 for p in order]


def oracle_suffix_array(text):
    return [0] + _sorted_suffixes(text.symbols)[1]


def oracle_bwt(text):
    """BWT by sorting all rotations of ``T#``."""
    s = text.symbols
    n = len(s)
    rots = sorted(s[i:] + s[:i] for i in range(n))
    return bytes(r[-1] for r in rots)


def oracle_interval(text, w):
    """1-based inclusive rows of suffixes prefixed by ``w``, or ``None``."""
    w = bytes(w)
    sufs = _sorted_suffixes(text.symbols)[0]
    lo = _bisect_prefix(sufs, w, False)
    hi = _bisect_prefix(sufs, w, True)
    if lo == hi:
        return None
    return (lo + 1, hi)


def _bisect_prefix(sufs, w, upper):
    lo, hi = 0, len(sufs)
    k = len(w)
    while lo < hi:
        mid = (lo + hi) // 2
        head = sufs[mid][:k]
        if head < w or (upper and head == w):
            lo = mid + 1
        else:
            hi = mid
    return lo


def oracle_extensions(text, w):
    """``(left, right)`` extension symbol sets of ``w`` over suffixes of ``T#``."""
    s = text.symbols
    n = len(s)
    w = bytes(w)
    k = len(w)
    left, right = set(), set()
    for p in range(n):
        if s[p:p + k] == w:
            left.add(s[p - 1] if p > 0 else TERMINATOR)
            right.add(s[p + k])
    return left, right


def oracle_substring_contexts(text):
    """Map every substring of ``T`` (and the empty string) to its extension sets."""
    s = text.symbols
    n = len(s)
    ctx = {}
    for p in range(n):
        prev = s[p - 1] if p > 0 else TERMINATOR
        for q in range(p, n):
            w = s[p:q]
            entry = ctx.get(w)
            if entry is None:
                entry = ctx[w] = (set(), set())
            entry[0].add(prev)
            entry[1].add(s[q])
    return ctx


def oracle_maxreps(text):
    """All maximal repeats (strings with >1 left and >1 right extension), by enumeration."""
    return {w for w, (left, right) in oracle_substring_contexts(text).items()
            if len(left) > 1 and len(right) > 1}


def oracle_ms(s, text):
    """Matching statistics of raw query ``s`` against ``text`` by direct scanning."""
    body = text.body
    if isinstance(s, str):
        s = s.encode("latin-1")
    codes = {ch: i + 1 for i, ch in enumerate(text.alphabet)}
    # symbols outside the alphabet become the terminator, which never matches
    s = bytes(codes.get(ch, 0) for ch in bytes(s))
    out = []
    for i in range(len(s)):
        j = 0
        while i + j < len(s) and s[i:i + j + 1] in body:
            j += 1
        out.append(j)
    return out
