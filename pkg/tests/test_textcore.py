import random

import pytest

from bibwt.errors import AlphabetOverflowError, InvalidSymbolError, TextError
from bibwt.textcore import (build_suffix_structures, build_text, oracle_bwt, oracle_interval,
                            oracle_maxreps, oracle_ms, oracle_substring_contexts,
                            oracle_suffix_array, text_from_symbols)

from support import random_bytes


def test_build_text_raw():
    t = build_text(b"banana")
    assert t.alphabet == b"abn" and t.sigma == 3 and t.n == 7
    assert t.symbols == bytes([2, 1, 3, 1, 3, 1, 0])
    assert t.decode(t.symbols) == b"banana#"
    assert build_text(b"banana\n") == t


def test_build_text_fasta():
    t = build_text(b">r1\nAC\n>r2\nGT\n", "fasta")
    assert t.decode(t.body) == b"ACGT" and t.n == 5
    assert t.records == (("r1", 1, 2), ("r2", 3, 4))


@pytest.mark.parametrize("data,fmt", [(b"", "raw"), (b"\n", "raw"), (b">only\n", "fasta"),
                                      (b"ACGT\n", "fasta")])
def test_build_text_rejects_empty(data, fmt):
    with pytest.raises(TextError):
        build_text(data, fmt)


def test_alphabet_overflow():
    with pytest.raises(AlphabetOverflowError):
        build_text(bytes(range(256)))
    assert build_text(bytes(range(1, 256))).sigma == 255


def test_encode_rejects_unknown_bytes():
    with pytest.raises(InvalidSymbolError):
        build_text(b"banana").encode(b"bz")


def test_banana_suffix_structures():
    ss = build_suffix_structures(build_text(b"banana"))
    assert ss.sa[1:] == [7, 6, 4, 2, 1, 5, 3]
    assert build_text(b"banana").decode(ss.bwt.symbols) == b"annb#aa"
    for i in range(1, 8):
        assert ss.isa[ss.sa[i]] == i


def test_two_symbol_text():
    ss = build_suffix_structures(build_text(b"a"))
    assert ss.sa[1:] == [2, 1]
    assert ss.bwt.symbols == bytes([1, 0])


@pytest.mark.parametrize("seed", range(20))
def test_suffix_structures_match_oracles(seed):
    rng = random.Random(seed)
    t = build_text(random_bytes(rng, rng.randint(1, 80), rng.choice((2, 4, 8))))
    ss = build_suffix_structures(t)
    assert ss.sa == oracle_suffix_array(t)
    assert ss.bwt.symbols == oracle_bwt(t)
    rev = t.reversed()
    assert ss.rev_sa == oracle_suffix_array(rev)
    for i in range(1, t.n + 1):
        assert ss.isa[ss.sa[i]] == i and ss.rev_isa[ss.rev_sa[i]] == i


def test_oracle_interval_examples():
    t = build_text(b"banana")
    assert oracle_interval(t, t.encode(b"ana")) == (3, 4)
    assert oracle_interval(t, t.encode(b"a")) == (2, 4)
    assert oracle_interval(t, b"") == (1, 7)
    assert oracle_interval(t, t.encode(b"nn")) is None


@pytest.mark.parametrize("seed", range(10))
def test_oracle_interval_width_is_occurrence_count(seed):
    rng = random.Random(seed)
    t = build_text(random_bytes(rng, rng.randint(1, 40), 2))
    body = t.body
    for i in range(len(body)):
        for j in range(i + 1, min(len(body), i + 6) + 1):
            w = body[i:j]
            lo, hi = oracle_interval(t, w)
            occ = sum(1 for p in range(len(body)) if body.startswith(w, p))
            assert hi - lo + 1 == occ


def decoded(t, strings):
    return {t.decode(w) for w in strings}


def test_oracle_maxreps_examples():
    t = build_text(b"banana")
    assert decoded(t, oracle_maxreps(t)) == {b"", b"a", b"ana"}
    t = build_text(b"CGCGCGAGAGCGAGA")
    assert decoded(t, oracle_maxreps(t)) == {b"", b"CG", b"CGCG", b"G", b"GA", b"GAG", b"GCG",
                                             b"GCGAGA"}
    t = build_text(b"ab")
    assert decoded(t, oracle_maxreps(t)) == {b""}


@pytest.mark.parametrize("seed", range(10))
def test_maximal_substring_counts_bounded(seed):
    rng = random.Random(seed)
    t = build_text(random_bytes(rng, rng.randint(1, 60), rng.choice((2, 4))))
    ctx = oracle_substring_contexts(t)
    right = sum(1 for left, r in ctx.values() if len(r) > 1)
    left = sum(1 for lft, r in ctx.values() if len(lft) > 1)
    assert right <= t.n - 1 and left <= t.n - 1


def test_oracle_ms_examples():
    t = build_text(b"banana")
    assert oracle_ms("ban", t) == [3, 2, 1]
    assert oracle_ms("nana", t) == [4, 3, 2, 1]
    # "nab" does not occur, "ab" does not occur: [2, 1, 1]
    assert oracle_ms("nab", t) == [2, 1, 1]
    assert oracle_ms("zzz", t) == [0, 0, 0]


def test_text_from_symbols():
    t = text_from_symbols([1, 2, 1], 2)
    assert t.symbols == bytes([1, 2, 1, 0]) and t.alphabet == b"ab"
    with pytest.raises(TextError):
        text_from_symbols([])
