"""``bibwt`` command line: build, stats and query."""

import argparse
import csv
import sys

from . import dbg
from .biindex import LEFT, RIGHT
from .errors import (AlphabetOverflowError, EmptyDescriptorError, IndexFormatError,
                     InvalidSymbolError, NoMaximalRepeatError, NotFoundError, TextError)
from .indexfile import build_index, load_index, save_index
from .ms import matching_statistics
from .textcore import build_text

EXIT_INPUT = 2
EXIT_ALPHABET = 3
EXIT_RANGE = 4


def _fail(msg, code):
    print(f"bibwt: {msg}", file=sys.stderr)
    return code


# -- build ---------------------------------------------------------------------

def build_report(bundle):
    cf, cb = bundle.cdawgs
    text = bundle.text
    return [
        f"n={text.n}",
        f"sigma={text.sigma}",
        f"maxreps={cf.sink}",
        f"bwt_runs={cf.rl.run_count}",
        f"rev_bwt_runs={cb.rl.run_count}",
        f"cdawg_nodes={cf.node_count}",
        f"cdawg_arcs={cf.arc_count}",
        f"rev_cdawg_arcs={cb.arc_count}",
    ]


def cmd_build(args):
    try:
        with open(args.input, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        return _fail(f"cannot read {args.input}: {exc.strerror}", EXIT_INPUT)
    try:
        text = build_text(data, args.format)
    except AlphabetOverflowError as exc:
        return _fail(str(exc), EXIT_ALPHABET)
    except TextError as exc:
        return _fail(str(exc), EXIT_INPUT)
    bundle = build_index(text)
    size = save_index(args.output, bundle, with_cdawg=args.with_cdawg)
    for line in build_report(bundle):
        print(line)
    print(f"bytes={size}")
    return 0


def _open_index(path):
    try:
        return load_index(path), None
    except OSError as exc:
        return None, _fail(f"cannot read {path}: {exc.strerror}", EXIT_INPUT)
    except IndexFormatError as exc:
        return None, _fail(f"{path}: {exc}", EXIT_INPUT)


# -- stats ---------------------------------------------------------------------

def kmer_counts(engine, k):
    """``(distinct, repeated)`` k-mers by sliding one descriptor over the text."""
    body = engine.text.body
    if k > len(body):
        return 0, 0
    d = engine.empty()
    for c in body[:k]:
        d = engine.extend(d, RIGHT, c)
    seen = {}
    seen[d.fwd.lo] = d.freq
    for p in range(k, len(body)):
        d = engine.contract(d, LEFT)
        d = engine.extend(d, RIGHT, body[p])
        seen[d.fwd.lo] = d.freq
    return len(seen), sum(1 for f in seen.values() if f > 1)


def summary_row(bundle, tau):
    cf, cb = bundle.cdawgs
    nodes_ge, arcs_ge = cf.pruned_counts(tau)
    return {
        "maxreps": cf.sink,
        "maxrep_left_ext": cb.arc_count,
        "maxrep_right_ext": cf.arc_count,
        "cdawg_nodes": cf.node_count,
        "cdawg_arcs": cf.arc_count,
        "bwt_runs": cf.rl.run_count,
        "rev_bwt_runs": cb.rl.run_count,
        "maxreps_ge_tau": nodes_ge - 1,
        "arcs_ge_tau": arcs_ge,
    }


SUMMARY_FIELDS = ("maxreps", "maxrep_left_ext", "maxrep_right_ext", "cdawg_nodes",
                  "cdawg_arcs", "bwt_runs", "rev_bwt_runs", "maxreps_ge_tau", "arcs_ge_tau")


def cmd_stats(args):
    bundle, err = _open_index(args.index)
    if err is not None:
        return err
    n = bundle.text.n
    if not (1 <= args.kmin <= args.kmax <= n) or args.tau < 0:
        return _fail(f"need 1 <= kmin <= kmax <= {n} and tau >= 0", EXIT_RANGE)
    engine = bundle.bwt_engine
    per_k = f"{args.out}_kmers.csv"
    summary = f"{args.out}_summary.csv"
    with open(per_k, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "distinct_kmers", "repeated_kmers"])
        for k in range(args.kmin, args.kmax + 1):
            w.writerow([k, *kmer_counts(engine, k)])
    row = summary_row(bundle, args.tau)
    with open(summary, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["tau", *SUMMARY_FIELDS])
        w.writerow([args.tau, *(row[f] for f in SUMMARY_FIELDS)])
    print(per_k)
    print(summary)
    return 0


# -- query ---------------------------------------------------------------------

class ScriptError(Exception):
    def __init__(self, code):
        super().__init__(code)
        self.code = code


_ERRORS = (
    (InvalidSymbolError, "SYMBOL"),
    (EmptyDescriptorError, "EMPTY"),
    (NoMaximalRepeatError, "NOREPEAT"),
    (NotFoundError, "NOTFOUND"),
)


class QuerySession:
    """Interpreter for query scripts; holds the current substring and engine."""

    def __init__(self, bundle, engine="BWT"):
        self.bundle = bundle
        self.text = bundle.text
        self._codes = {b: i + 1 for i, b in enumerate(self.text.alphabet)}
        self.engine = bundle.engine(engine)
        self.d = self.engine.empty()

    def run(self, lines):
        out = []
        for raw in lines:
            line = raw.strip()
            if not line or line.startswith("//"):
                continue
            out.append(self.execute(line))
        return out

    def execute(self, line):
        try:
            return self._dispatch(line.split())
        except ScriptError as exc:
            return f"ERR {exc.code}"
        except tuple(kind for kind, _ in _ERRORS) as exc:
            return next(f"ERR {code}" for kind, code in _ERRORS if isinstance(exc, kind))

    # helpers

    def _symbols(self, s):
        try:
            return bytes(self._codes[b] for b in s.encode("latin-1"))
        except (KeyError, UnicodeEncodeError):
            raise ScriptError("SYMBOL") from None

    def _symbol(self, s):
        if len(s) != 1:
            raise ScriptError("SYNTAX")
        return self._symbols(s)[0]

    @staticmethod
    def _side(tok):
        t = tok.upper()
        if t == "L":
            return LEFT
        if t == "R":
            return RIGHT
        raise ScriptError("SYNTAX")

    def _describe(self, d):
        return f"OK fwd=[{d.fwd.lo},{d.fwd.hi}] rev=[{d.rev.lo},{d.rev.hi}] len={d.length} freq={d.freq}"

    def _set(self, d):
        self.d = d
        return self._describe(d)

    def _symset(self, syms):
        return "OK {" + ",".join(self.text.symbol_char(c) for c in sorted(syms)) + "}"

    # commands

    def _dispatch(self, tok):
        op = tok[0].upper()
        args = tok[1:]
        e = self.engine
        if op == "START" and not args:
            return self._set(e.empty())
        if op == "FIND" and len(args) == 1:
            return self._set(e.find(self._symbols(args[0])))
        if op == "EXT" and len(args) == 2:
            side = self._side(args[0])
            return self._set(e.extend(self.d, side, self._symbol(args[1])))
        if op == "CTR" and len(args) == 1:
            return self._set(e.contract(self.d, self._side(args[0])))
        if op == "ENUM" and len(args) == 1:
            return self._symset(e.enumerate(self.d, self._side(args[0])))
        if op == "MAXIMAL" and len(args) == 1:
            return "OK " + ("true" if e.is_maximal(self.d, self._side(args[0])) else "false")
        if op == "FREQ" and not args:
            return f"OK {self.d.freq}"
        if op == "MS" and len(args) in (1, 2):
            if len(args) == 2 and args[1].upper() != "LAZY":
                raise ScriptError("SYNTAX")
            strategy = "lazy" if len(args) == 2 else "eager"
            res = matching_statistics(self.bundle.bwt_engine, args[0], strategy)
            return "OK " + " ".join(map(str, res.values))
        if op == "ENGINE" and len(args) == 1 and args[0].upper() in ("BWT", "CDAWG"):
            self._switch(args[0].upper())
            return "OK"
        if op == "DBG" and args:
            return self._dbg(args[0].upper(), args[1:])
        raise ScriptError("SYNTAX")

    def _switch(self, name):
        d = self.d
        start = self.bundle.ss.fwd.sa[d.fwd.lo]
        body = self.text.body
        self.engine = self.bundle.engine(name)
        self.d = self.engine.find(body[start - 1:start - 1 + d.length])

    def _dbg(self, sub, args):
        e = self.engine
        h = dbg.handle(self.d)
        if sub == "NODE" and len(args) == 1:
            return self._set(dbg.node(e, self._symbols(args[0])).d)
        if sub == "ARCS" and len(args) in (1, 2):
            variant = self._variant(args[1:])
            return self._symset(dbg.arcs(e, h, self._side(args[0]), variant))
        if sub == "FOLLOW" and len(args) in (2, 3):
            variant = self._variant(args[2:])
            side = self._side(args[0])
            h2, _ = dbg.follow(e, h, side, self._symbol(args[1]), variant)
            return self._set(h2.d)
        if sub == "INC" and len(args) == 1:
            mode = args[0].upper()
            if mode == "FREQ":
                h2, _ = dbg.change_order(e, h, "inc_freq")
            elif mode == "MAXREP":
                h2, _ = dbg.change_order(e, h, "inc_maxrep")
            else:
                h2, _ = dbg.change_order(e, h, "inc_unit", symbol=self._symbol(args[0]))
            return self._set(h2.d)
        if sub == "DEC" and len(args) == 1:
            mode = {"UNIT": "dec_unit", "FREQ": "dec_freq", "MAXREP": "dec_maxrep"}.get(args[0].upper())
            if mode is None:
                raise ScriptError("SYNTAX")
            h2, _ = dbg.change_order(e, h, mode)
            return self._set(h2.d)
        raise ScriptError("SYNTAX")

    @staticmethod
    def _variant(rest):
        if not rest:
            return dbg.OCCURRING
        if len(rest) == 1 and rest[0].upper() == "COMPLETE":
            return dbg.COMPLETE
        raise ScriptError("SYNTAX")


def cmd_query(args):
    bundle, err = _open_index(args.index)
    if err is not None:
        return err
    if args.script is None or args.script == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            with open(args.script, "r", encoding="latin-1") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            return _fail(f"cannot read {args.script}: {exc.strerror}", EXIT_INPUT)
    session = QuerySession(bundle, args.engine)
    for line in session.run(lines):
        print(line)
    return 0


def make_parser():
    p = argparse.ArgumentParser(prog="bibwt", description="Bidirectional BWT and CDAWG indexes.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an index file")
    b.add_argument("input")
    b.add_argument("--format", choices=("raw", "fasta"), default="raw")
    b.add_argument("--output", "-o", required=True)
    b.add_argument("--with-cdawg", action="store_true", help="store the CDAWGs in the file")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("stats", help="k-mer and maximal-repeat statistics as CSV")
    s.add_argument("index")
    s.add_argument("--kmin", type=int, default=1)
    s.add_argument("--kmax", type=int, default=12)
    s.add_argument("--tau", type=int, default=0)
    s.add_argument("--out", required=True, help="output prefix")
    s.set_defaults(func=cmd_stats)

    q = sub.add_parser("query", help="run a query script")
    q.add_argument("index")
    q.add_argument("script", nargs="?")
    q.add_argument("--engine", choices=("BWT", "CDAWG"), default="BWT", type=str.upper)
    q.set_defaults(func=cmd_query)
    return p


def main(argv=None):
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
