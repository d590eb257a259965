"""Acceptance suite: one test per criterion, each recording a PASS/FAIL summary line."""

import csv
import random
import time
from collections import Counter, defaultdict
from contextlib import contextmanager

import pytest

from bibwt import dbg
from bibwt.biindex import LEFT, RIGHT, STRATEGIES, BiIndex
from bibwt.cdawg import RlBwt
from bibwt.cli import QuerySession, main
from bibwt.errors import NoMaximalRepeatError, NotFoundError
from bibwt.indexfile import build_index, load_index
from bibwt.ms import matching_statistics
from bibwt.succinct import BitVec, BpTree, CharSeq
from bibwt.textcore import build_text, oracle_interval, oracle_maxreps, oracle_ms

from support import (ACCEPTANCE, ALPHABETS, Engines, IntervalOracle, key, kmer_counter,
                     random_bytes, random_script, repetitive_bytes)


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE.append(f"criterion {number} FAIL  {title}: {type(exc).__name__}")
        raise
    took = time.perf_counter() - start
    ACCEPTANCE.append(f"criterion {number} PASS  {title} ({took:.1f}s)")


def corpus(count, max_len, seed, min_len=1):
    """Mixed random and block-copy texts over alphabets of size 2, 4 and 8."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        gen = repetitive_bytes if i % 2 else random_bytes
        out.append(gen(rng, rng.randint(min_len, max_len), (2, 4, 8)[i % 3]))
    return out


FIXED = [b"banana", b"CGCGCGAGAGCGAGA", b"a", b"ab", b"aaaaaaaa", b"abababab", b"mississippi"]


# -- 1 ---------------------------------------------------------------------------

@pytest.mark.slow
def test_criterion_1_exhaustive_contraction():
    with criterion(1, "exhaustive left/right contraction, 200 texts, n <= 512"):
        texts = corpus(200, 511, seed=1)
        checked = 0
        for t, raw in enumerate(texts):
            idx = BiIndex(build_text(raw))
            orc = IntervalOracle(idx.text.symbols)
            body = idx.text.body
            m = len(body)
            strategies = STRATEGIES if t < 20 else ("theorem",)
            for i in range(m):
                for L in range(1, m - i + 1):
                    d = orc.descriptor(i, L)
                    want_l = orc.descriptor(i + 1, L - 1)
                    want_r = orc.descriptor(i, L - 1)
                    for s in strategies:
                        assert idx.contract(d, LEFT, s) == want_l, (raw, i, L, s)
                        assert idx.contract(d, RIGHT, s) == want_r, (raw, i, L, s)
                    checked += 1
        assert checked > 10 ** 6


# -- 2 ---------------------------------------------------------------------------

def test_criterion_2_worked_example():
    with criterion(2, "worked example: CGC takes the edge branch, CGA the path branch"):
        e = Engines(b"CGCGCGAGAGCGAGA")
        text = e.text
        for engine in (e.bi, e.cd):
            for w, branch in ((b"CGC", "edge"), (b"CGA", "path")):
                sym = text.encode(w)
                trace = []
                d = engine.contract(engine.find(sym), LEFT, "theorem", trace)
                assert trace == [branch]
                assert tuple(d.fwd) == oracle_interval(text, sym[1:])
                assert tuple(d.rev) == oracle_interval(text.reversed(), sym[1:][::-1])
                assert d.length == 2


# -- 3 ---------------------------------------------------------------------------

@pytest.mark.slow
def test_criterion_3_engine_equivalence():
    with criterion(3, "BWT and CDAWG engines agree on 10^5 random operation sequences"):
        texts = corpus(50, 400, seed=3, min_len=2)
        sequences = 0
        for t, raw in enumerate(texts):
            rng = random.Random(t)
            e = Engines(raw)
            bi, cd = e.bi, e.cd
            body = e.text.body
            sigma = e.text.sigma
            for _ in range(2000):
                if rng.random() < 0.3:
                    db, dc = bi.empty(), cd.empty()
                else:
                    i = rng.randrange(len(body))
                    w = body[i:i + rng.randint(1, 20)]
                    db, dc = bi.find(w), cd.find(w)
                for _ in range(rng.randint(1, 12)):
                    side = rng.choice((LEFT, RIGHT))
                    r = rng.random()
                    if r < 0.4:
                        exts = [c for c in bi.enumerate(db, side) if c]
                        c = rng.choice(exts) if exts and rng.random() < 0.85 else rng.randint(1, sigma)
                        try:
                            nb = bi.extend(db, side, c)
                        except NotFoundError:
                            with pytest.raises(NotFoundError):
                                cd.extend(dc, side, c)
                            continue
                        db, dc = nb, cd.extend(dc, side, c)
                    elif r < 0.75:
                        if db.length == 0:
                            continue
                        strategy = rng.choice(STRATEGIES)
                        db, dc = bi.contract(db, side, strategy), cd.contract(dc, side, strategy)
                    elif r < 0.9:
                        assert list(cd.enumerate(dc, side)) == list(bi.enumerate(db, side))
                        assert cd.is_maximal(dc, side) == bi.is_maximal(db, side)
                    else:
                        assert cd.freq(dc) == bi.freq(db)
                    assert key(dc) == key(db)
                sequences += 1
        assert sequences == 10 ** 5


# -- 4 ---------------------------------------------------------------------------

def _brute_graph(symbols, k):
    """k-mer counts, occurring arcs both ways, and the (k-1)-mer successor/predecessor maps."""
    body = symbols[:-1]
    counts = kmer_counter(body, k)
    right, left = defaultdict(set), defaultdict(set)
    for p in range(len(body) - k + 1):
        w = body[p:p + k]
        right[w].add(symbols[p + k])
        left[w].add(symbols[p - 1] if p else 0)
    succ, pred = defaultdict(set), defaultdict(set)
    for w in counts:
        succ[w[:-1]].add(w[-1])
        pred[w[1:]].add(w[0])
    return counts, right, left, succ, pred


@pytest.mark.slow
def test_criterion_4_de_bruijn_equivalence():
    with criterion(4, "de Bruijn graphs k = 1..12 match a brute-force graph on texts up to 10 kB"):
        rng = random.Random(4)
        cases = [
            (random_bytes(rng, 10000, 4), ("bi",)),
            (repetitive_bytes(rng, 10000, 2), ("bi",)),
            (random_bytes(rng, 4000, 8), ("bi",)),
            (repetitive_bytes(rng, 1500, 4), ("bi", "cd")),
        ]
        for raw, which in cases:
            e = Engines(raw)
            symbols = e.text.symbols
            body = e.text.body
            for k in range(1, 13):
                counts, right, left, succ, pred = _brute_graph(symbols, k)
                longer = kmer_counter(body, k + 1)
                for name in which:
                    engine = getattr(e, name)
                    # node set: sliding one window over the text visits each node once per occurrence
                    h = dbg.node(engine, body[:k])
                    seen = {h.d.fwd.lo}
                    for p in range(k, len(body)):
                        h, _ = dbg.follow(engine, h, RIGHT, body[p])
                        seen.add(h.d.fwd.lo)
                    assert len(seen) == len(counts)
                    for w, f in counts.items():
                        h = dbg.node(engine, w)
                        assert h.freq == f and h.k == k
                        assert dbg.arcs(engine, h, RIGHT) == right[w]
                        assert dbg.arcs(engine, h, LEFT) == left[w]
                        assert dbg.arcs(engine, h, RIGHT, dbg.COMPLETE) == succ[w[1:]]
                        assert dbg.arcs(engine, h, LEFT, dbg.COMPLETE) == pred[w[:-1]]
                        for c in succ[w[1:]]:
                            nh, arc = dbg.follow(engine, h, RIGHT, c, dbg.COMPLETE)
                            assert nh.d.fwd == dbg.node(engine, w[1:] + bytes([c])).d.fwd
                            assert arc.freq == longer.get(w + bytes([c]), 0)


# -- 5 ---------------------------------------------------------------------------

def test_criterion_5_order_changes():
    with criterion(5, "order changes match exhaustive search on 10^4 random cases"):
        cases = 0
        for t, raw in enumerate(corpus(20, 300, seed=5, min_len=20)):
            rng = random.Random(t)
            e = Engines(raw)
            text = e.text
            body = text.body
            n = text.n
            reps = oracle_maxreps(text) | {b""}

            def freq(w):
                if not w:
                    return n
                iv = oracle_interval(text, w)
                return 0 if iv is None else iv[1] - iv[0] + 1

            for _ in range(500):
                i = rng.randrange(len(body))
                w = body[i:i + rng.randint(1, 10)]
                k = len(w)
                f = freq(w)
                engine = e.bi if cases % 2 else e.cd
                h = dbg.node(engine, w)
                # incFreq, right and left
                for side in (RIGHT, LEFT):
                    up, k2 = dbg.change_order(engine, h, "inc_freq", side=side)
                    u = body[i:i + k2] if side == RIGHT else body[i + k - k2:i + k]
                    assert key(up.d) == key(engine.find(u))
                    assert freq(u) == f
                    for c in range(1, text.sigma + 1):
                        longer = u + bytes([c]) if side == RIGHT else bytes([c]) + u
                        assert freq(longer) < f
                # decFreq, right and left
                down, k2 = dbg.change_order(engine, h, "dec_freq")
                assert key(down.d) == key(engine.find(w[:k2]))
                assert freq(w[:k2]) > f
                assert all(freq(w[:j]) == f for j in range(k2 + 1, k))
                down, k2 = dbg.change_order(engine, h, "dec_freq", side=LEFT)
                assert key(down.d) == key(engine.find(w[k - k2:]))
                assert freq(w[k - k2:]) > f
                assert all(freq(w[k - j:]) == f for j in range(k2 + 1, k))
                # maximal-repeat jumps
                if f > 1:
                    best = min(len(r) for r in reps if w in r)
                    targets = [r for r in reps if w in r and len(r) == best]
                    assert len(targets) == 1
                    up, k2 = dbg.change_order(engine, h, "inc_maxrep")
                    assert key(up.d) == key(engine.find(targets[0])) and k2 == best
                else:
                    with pytest.raises(NoMaximalRepeatError):
                        dbg.change_order(engine, h, "inc_maxrep")
                suf = max((w[j:] for j in range(1, k + 1) if w[j:] in reps), key=len)
                out, k2 = dbg.change_order(engine, h, "dec_maxrep")
                assert key(out.d) == key(engine.find(suf)) and k2 == len(suf)
                pre = max((w[:j] for j in range(k) if w[:j] in reps), key=len)
                out, k2 = dbg.change_order(engine, h, "dec_maxrep", side=RIGHT)
                assert key(out.d) == key(engine.find(pre)) and k2 == len(pre)
                cases += 1
        assert cases == 10 ** 4


# -- 6 ---------------------------------------------------------------------------

def test_criterion_6_matching_statistics():
    with criterion(6, "eager and lazy matching statistics equal the oracle on 500 pairs"):
        rng = random.Random(6)
        for p in range(500):
            sigma = (2, 4, 8)[p % 3]
            gen = repetitive_bytes if p % 2 else random_bytes
            t = gen(rng, rng.randint(1, 1000), sigma)
            r = rng.random()
            if r < 0.5:
                i = rng.randrange(len(t))
                s = t[i:i + rng.randint(1, 150)]
                s = bytes(rng.choice(ALPHABETS[sigma]) if rng.random() < 0.05 else c for c in s)
            elif r < 0.8:
                s = random_bytes(rng, rng.randint(0, 200), sigma)
            else:
                s = random_bytes(rng, rng.randint(0, 200), 8)  # may include absent symbols
            s = s[:200]
            idx = BiIndex(build_text(t))
            want = oracle_ms(s, idx.text)
            eager = matching_statistics(idx, s, "eager")
            lazy = matching_statistics(idx, s, "lazy")
            assert eager.values == want and lazy.values == want
            assert lazy.contractions <= eager.contractions


# -- 7 ---------------------------------------------------------------------------

def test_criterion_7_structural_counts():
    with criterion(7, "maximal repeats = CDAWG nodes, runs <= arcs, maximal counts <= n - 1"):
        texts = FIXED + corpus(60, 400, seed=7) + corpus(6, 5000, seed=70, min_len=1000)
        for raw in texts:
            e = Engines(raw)
            cf, cb = e.cd.forward, e.cd.backward
            m = len(e.text.body)
            assert cf.rl.run_count <= cf.arc_count
            assert cb.rl.run_count <= cb.arc_count
            fwd, bwd = e.topo.forward, e.topo.backward
            right_max = fwd.st.tree.size - fwd.st.tree.num_leaves - 1  # internal, root excluded
            left_max = bwd.st.tree.size - bwd.st.tree.num_leaves - 1
            assert right_max <= m - 1 and left_max <= m - 1
            marked = fwd.st.tree.marks.ones
            assert cf.sink == cb.sink == marked
            if m <= 400:
                reps = oracle_maxreps(e.text) | {b""}
                assert cf.sink == len(reps)


# -- 8 ---------------------------------------------------------------------------

def test_criterion_8_cli(tmp_path, capsys):
    with criterion(8, "CLI builds are deterministic, persistent, engine-independent"):
        texts = FIXED[:3] + corpus(6, 600, seed=8, min_len=20)
        for t, raw in enumerate(texts):
            rng = random.Random(t)
            src = tmp_path / f"t{t}.txt"
            src.write_bytes(raw)
            paths = []
            for run in range(2):
                for flag in ((), ("--with-cdawg",)):
                    out = tmp_path / f"t{t}_{run}_{len(flag)}.idx"
                    assert main(["build", str(src), "-o", str(out), *flag]) == 0
                    paths.append(out)
            assert paths[0].read_bytes() == paths[2].read_bytes()
            assert paths[1].read_bytes() == paths[3].read_bytes()
            memory = build_index(build_text(raw))
            script = random_script(rng, memory.text, 80)
            expect = QuerySession(memory, "BWT").run(script)
            for path in paths[:2]:
                loaded = load_index(path)
                assert QuerySession(loaded, "BWT").run(script) == expect
                assert QuerySession(loaded, "CDAWG").run(script) == expect
            sp = tmp_path / f"s{t}.txt"
            sp.write_text("\n".join(script))
            outputs = []
            for engine in ("BWT", "CDAWG"):
                capsys.readouterr()
                assert main(["query", str(paths[1]), str(sp), "--engine", engine]) == 0
                outputs.append(capsys.readouterr().out)
            assert outputs[0] == outputs[1] == "".join(x + "\n" for x in expect)
            prefix = tmp_path / f"st{t}"
            kmax = min(12, len(raw))
            assert main(["stats", str(paths[0]), "--kmax", str(kmax), "--out", str(prefix)]) == 0
            with open(f"{prefix}_kmers.csv", newline="") as fh:
                rows = list(csv.reader(fh))[1:]
            assert [int(r[0]) for r in rows] == list(range(1, kmax + 1))
            for k, distinct, repeated in rows:
                counts = Counter(raw[i:i + int(k)] for i in range(len(raw) - int(k) + 1))
                assert int(distinct) == len(counts)
                assert int(repeated) == sum(1 for f in counts.values() if f > 1)


# -- 9 ---------------------------------------------------------------------------

def _preorder(children, root):
    order, stack = [], [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(children.get(v, ())))
    return {v: i + 1 for i, v in enumerate(order)}


def test_criterion_9_succinct_primitives():
    with criterion(9, "10^5 random rank/select/tree operations per structure match naive oracles"):
        rng = random.Random(9)
        ops = 10 ** 5

        bits = [int(rng.random() < 0.3) for _ in range(5000)]
        bv = BitVec(bits)
        prefix = [0]
        for b in bits:
            prefix.append(prefix[-1] + b)
        ones = [i + 1 for i, b in enumerate(bits) if b]
        for _ in range(ops // 4):
            i = rng.randint(0, len(bits))
            assert bv.rank1(i) == prefix[i] and bv.rank0(i) == i - prefix[i]
            j = rng.randint(1, len(ones))
            assert bv.select1(j) == ones[j - 1]
            p = rng.randint(1, len(bits))
            assert bv[p] == bits[p - 1]

        sigma = 6
        seq = bytes(rng.randint(0, sigma) for _ in range(4000))
        cs = CharSeq(seq, sigma)
        rl = RlBwt.from_symbols(bytes(sorted(seq[:1000]) + list(seq[1000:])), sigma)
        rl_seq = bytes(sorted(seq[:1000]) + list(seq[1000:]))
        for structure, s in ((cs, seq), (rl, rl_seq)):
            counts = [[0] * (len(s) + 1) for _ in range(sigma + 1)]
            where = [[] for _ in range(sigma + 1)]
            for i, c in enumerate(s):
                for a in range(sigma + 1):
                    counts[a][i + 1] = counts[a][i] + (a == c)
                where[c].append(i + 1)
            for _ in range(ops // 3):
                c = rng.randint(0, sigma)
                i = rng.randint(0, len(s))
                assert structure.rank(c, i) == counts[c][i]
                if where[c]:
                    k = rng.randint(1, len(where[c]))
                    assert structure.select(c, k) == where[c][k - 1]
                p = rng.randint(1, len(s))
                got = structure[p] if isinstance(structure, CharSeq) else structure.access(p)
                assert got == s[p - 1]

        size = 3000
        parent = [0, 0] + [rng.randint(max(1, v - rng.choice((3, 50, v))), v - 1)
                           for v in range(2, size + 1)]
        children = defaultdict(list)
        for v in range(2, size + 1):
            children[parent[v]].append(v)
        tree = BpTree.from_parent_children(children, root=1)
        pre = _preorder(children, 1)
        orig = {b: a for a, b in pre.items()}
        marks = [rng.random() < 0.2 for _ in range(size)]
        marks[0] = True
        tree.attach_marks(marks)
        depth = [0] * (size + 1)
        for v in range(2, size + 1):
            depth[v] = depth[parent[v]] + 1

        def ancestors(v):
            out = [v]
            while parent[out[-1]]:
                out.append(parent[out[-1]])
            return out

        for _ in range(ops // 5):
            v, w = rng.randint(1, size), rng.randint(1, size)
            av, aw = ancestors(v), set(ancestors(w))
            x, y = pre[v], pre[w]
            assert orig[tree.lca(x, y)] == next(a for a in av if a in aw)
            assert tree.lca(x, x) == x and tree.lca(tree.lca(x, y), y) == tree.lca(x, y)
            assert tree.depth(x) == depth[v]
            assert tree.level_ancestor(x, tree.depth(x)) == x
            d = rng.randint(0, depth[v])
            assert orig[tree.level_ancestor(x, d)] == av[depth[v] - d]
            if v != 1:
                assert orig[tree.parent(x)] == parent[v]
            assert orig[tree.lowest_marked_ancestor(x)] == next(a for a in av if marks[pre[a] - 1])
