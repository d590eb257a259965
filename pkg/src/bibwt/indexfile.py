"""Index bundle and its on-disk container.

A file is the magic ``BBWX``, a little-endian ``uint32`` version and a
sequence of sections ``(4-byte tag, uint64 length, payload)`` written in a
fixed tag order. CDAWG sections are optional; when absent the CDAWGs are
rebuilt on first use.
"""

import struct
import warnings

from .biindex import BiIndex
from .cdawg import Cdawg, CdawgIndex, RlBwt, build_cdawg, pack_ints, unpack_ints
from .errors import IndexFormatError
from .succinct import BitVec, BpTree
from .textcore import Text, build_suffix_arrays, build_suffix_structures, SuffixStructures
from .topology import SltTopology, StTopology, Strand, TopologyPair, build_topologies

MAGIC = b"BBWX"
VERSION = 1
TAGS = (b"TEXT", b"ALPH", b"SAFW", b"SABW", b"BWTF", b"BWTR", b"BPSF", b"BPLF", b"BPSB",
        b"BPLB", b"MKSF", b"MKLF", b"MKSB", b"MKLB", b"CDWF", b"CDWB", b"RLBF", b"RLBB",
        b"AFFX")


class IndexBundle:
    """Text, suffix structures and topologies, with both engines built lazily."""

    def __init__(self, text, ss, topo, cdawgs=None):
        self.text = text
        self.ss = ss
        self.topo = topo
        self._cdawgs = cdawgs
        self._bwt = None
        self._cdawg = None

    @property
    def cdawgs(self):
        if self._cdawgs is None:
            self._cdawgs = (build_cdawg(self.ss.fwd, self.topo.forward, self.topo.backward),
                            build_cdawg(self.ss.rev, self.topo.backward, self.topo.forward))
        return self._cdawgs

    @property
    def bwt_engine(self):
        if self._bwt is None:
            self._bwt = BiIndex(self.text, self.ss, self.topo)
        return self._bwt

    @property
    def cdawg_engine(self):
        if self._cdawg is None:
            self._cdawg = CdawgIndex(self.text, cdawgs=self.cdawgs)
        return self._cdawg

    def engine(self, name):
        name = name.upper()
        if name == "BWT":
            return self.bwt_engine
        if name == "CDAWG":
            return self.cdawg_engine
        raise ValueError(f"unknown engine {name!r}")


def build_index(text):
    ss = build_suffix_structures(text)
    return IndexBundle(text, ss, build_topologies(ss))


def _bits(bv):
    return struct.pack("<Q", bv.n) + bv.to_bytes()


def _unbits(payload):
    if len(payload) < 8:
        raise IndexFormatError("truncated bit-vector section")
    (n,) = struct.unpack_from("<Q", payload)
    body = payload[8:]
    if len(body) != (n + 7) // 8:
        raise IndexFormatError("bit-vector section size mismatch")
    return BitVec.from_bytes(body, n)


def _u32s(values):
    return struct.pack(f"<{len(values)}I", *values)


def _un32s(payload):
    if len(payload) % 4:
        raise IndexFormatError("array section is not a whole number of 32-bit words")
    return list(struct.unpack(f"<{len(payload) // 4}I", payload))


def _parens(tree):
    return BitVec(tree.parens)


def dumps(bundle, with_cdawg=False):
    """Serialize ``bundle``; CDAWG sections are included only when ``with_cdawg``."""
    ss, topo = bundle.ss, bundle.topo
    fwd, bwd = topo.forward, topo.backward
    sections = {
        b"TEXT": bundle.text.symbols,
        b"ALPH": bundle.text.alphabet,
        b"SAFW": _u32s([p - 1 for p in ss.fwd.sa[1:]]),
        b"SABW": _u32s([p - 1 for p in ss.rev.sa[1:]]),
        b"BWTF": ss.fwd.bwt.symbols,
        b"BWTR": ss.rev.bwt.symbols,
        b"BPSF": _bits(_parens(fwd.st.tree)),
        b"BPLF": _bits(_parens(fwd.slt.tree)),
        b"BPSB": _bits(_parens(bwd.st.tree)),
        b"BPLB": _bits(_parens(bwd.slt.tree)),
        b"MKSF": _bits(fwd.st.tree.marks),
        b"MKLF": _bits(fwd.slt.tree.marks),
        b"MKSB": _bits(bwd.st.tree.marks),
        b"MKLB": _bits(bwd.slt.tree.marks),
    }
    if with_cdawg:
        cf, cb = bundle.cdawgs
        sections[b"CDWF"] = cf.to_bytes()
        sections[b"CDWB"] = cb.to_bytes()
        sections[b"RLBF"] = cf.rl.to_bytes()
        sections[b"RLBB"] = cb.rl.to_bytes()
        sections[b"AFFX"] = pack_ints([len(cf.affix), *cf.affix, len(cb.affix), *cb.affix])
    out = [MAGIC, struct.pack("<I", VERSION)]
    for tag in TAGS:
        if tag in sections:
            payload = bytes(sections[tag])
            out.append(tag + struct.pack("<Q", len(payload)) + payload)
    return b"".join(out)


def _read_sections(data):
    if len(data) < 8 or data[:4] != MAGIC:
        raise IndexFormatError("not an index file (bad magic)")
    (version,) = struct.unpack_from("<I", data, 4)
    if version != VERSION:
        raise IndexFormatError(f"unsupported index version {version}")
    pos = 8
    sections = {}
    while pos < len(data):
        if pos + 12 > len(data):
            raise IndexFormatError("truncated section header")
        tag = data[pos:pos + 4]
        (size,) = struct.unpack_from("<Q", data, pos + 4)
        pos += 12
        if pos + size > len(data):
            raise IndexFormatError(f"section {tag!r} runs past the end of the file")
        if tag in TAGS:
            sections[tag] = data[pos:pos + size]
        else:
            warnings.warn(f"skipping unknown index section {tag!r}")
        pos += size
    return sections


def _strand(arrays, st_parens, st_marks, slt_parens, slt_marks):
    st = StTopology(arrays, parens=bytes(st_parens.bits()), marks=st_marks.bits())
    slt = SltTopology(BpTree(bytes(slt_parens.bits()), slt_marks.bits()))
    return Strand(st, slt)


def loads(data):
    """Rebuild an :class:`IndexBundle` from serialized bytes."""
    sec = _read_sections(bytes(data))
    required = TAGS[:14]
    missing = [t.decode() for t in required if t not in sec]
    if missing:
        raise IndexFormatError(f"missing sections: {', '.join(missing)}")
    alphabet = bytes(sec[b"ALPH"])
    try:
        text = Text(bytes(sec[b"TEXT"]), len(alphabet), alphabet)
    except ValueError as exc:
        raise IndexFormatError(f"bad TEXT section: {exc}") from None
    n = text.n
    sa_f = _un32s(sec[b"SAFW"])
    sa_b = _un32s(sec[b"SABW"])
    if len(sa_f) != n or len(sa_b) != n:
        raise IndexFormatError("suffix array length differs from the text")
    fwd = build_suffix_arrays(text.symbols, text.sigma, sa_f)
    rev = build_suffix_arrays(text.reversed().symbols, text.sigma, sa_b)
    if fwd.bwt.symbols != sec[b"BWTF"] or rev.bwt.symbols != sec[b"BWTR"]:
        raise IndexFormatError("stored BWT disagrees with the suffix array")
    ss = SuffixStructures(text, fwd, rev)
    topo = TopologyPair(
        _strand(fwd, _unbits(sec[b"BPSF"]), _unbits(sec[b"MKSF"]),
                _unbits(sec[b"BPLF"]), _unbits(sec[b"MKLF"])),
        _strand(rev, _unbits(sec[b"BPSB"]), _unbits(sec[b"MKSB"]),
                _unbits(sec[b"BPLB"]), _unbits(sec[b"MKLB"])),
    )
    cdawgs = None
    cd_tags = TAGS[14:]
    if all(t in sec for t in cd_tags):
        aff = unpack_ints(sec[b"AFFX"])
        k = aff[0]
        aff_f = aff[1:1 + k]
        aff_b = aff[2 + k:]
        if len(aff) < 2 + k or aff[1 + k] != len(aff_b):
            raise IndexFormatError("malformed AFFX section")
        cdawgs = (Cdawg.from_bytes(sec[b"CDWF"], RlBwt.from_bytes(sec[b"RLBF"]), aff_f),
                  Cdawg.from_bytes(sec[b"CDWB"], RlBwt.from_bytes(sec[b"RLBB"]), aff_b))
    elif any(t in sec for t in cd_tags):
        raise IndexFormatError("incomplete CDAWG sections")
    return IndexBundle(text, ss, topo, cdawgs)


def save_index(path, bundle, with_cdawg=False):
    data = dumps(bundle, with_cdawg)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def load_index(path):
    with open(path, "rb") as fh:
        return loads(fh.read())
