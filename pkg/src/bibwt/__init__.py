"""Bidirectional BWT and CDAWG indexes with constant-direction contraction.

Quick start::

    from bibwt import build_text, BiIndex
    idx = BiIndex(build_text(b"banana"))
    d = idx.find(idx.text.encode(b"ana"))
    idx.contract(d, "left")   # descriptor of "na"
"""

from ._backend import BACKEND
from .biindex import LEFT, RIGHT, BiIndex, Descriptor, Interval
from .cdawg import Cdawg, CdawgDescriptor, CdawgIndex, CdawgStId, RlBwt, build_cdawg_pair
from .dbg import (COMPLETE, OCCURRING, DbgArc, DbgHandle, arcs, change_order, dbg_freq,
                  follow, node)
from .errors import (AlphabetOverflowError, BibwtError, DescriptorError, EmptyDescriptorError,
                     IndexFormatError, InvalidSymbolError, NoMaximalRepeatError, NotFoundError,
                     OutOfRangeError, TextError, TreeQueryError)
from .indexfile import IndexBundle, build_index, load_index, save_index
from .ms import MsResult, matching_statistics
from .succinct import BitVec, BpTree, CharSeq
from .textcore import Text, build_suffix_structures, build_text
from .topology import build_topologies

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "LEFT", "RIGHT", "BiIndex", "Descriptor", "Interval",
    "Cdawg", "CdawgDescriptor", "CdawgIndex", "CdawgStId", "RlBwt", "build_cdawg_pair",
    "COMPLETE", "OCCURRING", "DbgArc", "DbgHandle", "arcs", "change_order", "dbg_freq",
    "follow", "node",
    "AlphabetOverflowError", "BibwtError", "DescriptorError", "EmptyDescriptorError",
    "IndexFormatError", "InvalidSymbolError", "NoMaximalRepeatError", "NotFoundError",
    "OutOfRangeError", "TextError", "TreeQueryError",
    "IndexBundle", "build_index", "load_index", "save_index",
    "MsResult", "matching_statistics", "BitVec", "BpTree", "CharSeq",
    "Text", "build_suffix_structures", "build_text", "build_topologies",
]
