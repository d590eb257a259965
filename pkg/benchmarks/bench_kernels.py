"""Compare the compiled kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--n 20000] [--queries 20000] [--seed 0]
"""

import argparse
import random
import time

from bibwt import _kernels
from bibwt._backend import compiled_kernels
from bibwt.biindex import LEFT, BiIndex, _contraction_kernel
from bibwt.textcore import build_text


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def construction(impl, symbols):
    sa = impl.suffix_array(symbols)
    lcp = impl.lcp_kasai(symbols, sa)
    parens = impl.lcp_interval_parens(lcp)
    impl.bp_tables(parens)


def contraction_inputs(idx, rng, count):
    body = idx.text.body
    out = []
    while len(out) < count:
        i = rng.randrange(len(body) - 1)
        d = idx.find(body[i:i + rng.randint(2, 40)])
        out.append((d.fwd.lo, d.fwd.hi, d.rev.lo, d.rev.hi, d.length))
    return out


def contraction(kernel, inputs, mode):
    for a_lo, a_hi, b_lo, b_hi, length in inputs:
        kernel.contract(a_lo, a_hi, b_lo, b_hi, length, mode)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=20000, help="text length")
    p.add_argument("--queries", type=int, default=20000, help="contractions per run")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = random.Random(args.seed)
    raw = bytes(rng.choice(b"acgt") for _ in range(args.n))
    idx = BiIndex(build_text(raw))
    symbols = idx.text.symbols
    inputs = contraction_inputs(idx, rng, args.queries)
    impls = [("python", _kernels)]
    if compiled_kernels is not None:
        impls.append(("cython", compiled_kernels))
    else:
        print("compiled kernels not built; showing the Python fallback only")

    rows = []
    for name, impl in impls:
        kernel = _contraction_kernel(idx._views[LEFT], impl)
        build = best_of(lambda: construction(impl, symbols), repeat=1 if name == "python" else 3)
        per_mode = [best_of(lambda m=m: contraction(kernel, inputs, m)) for m in (0, 1, 2)]
        rows.append((name, build, [t / len(inputs) * 1e6 for t in per_mode]))

    print(f"text length {args.n}, {len(inputs)} contractions per mode")
    print(f"{'backend':<8} {'build (s)':>10} {'theorem (us)':>13} {'general (us)':>13} {'practical (us)':>15}")
    for name, build, modes in rows:
        print(f"{name:<8} {build:>10.3f} {modes[0]:>13.2f} {modes[1]:>13.2f} {modes[2]:>15.2f}")
    if len(rows) == 2:
        (_, pb, pm), (_, cb, cm) = rows
        print(f"speedup  {pb / cb:>10.1f}x {pm[0] / cm[0]:>12.1f}x {pm[1] / cm[1]:>12.1f}x "
              f"{pm[2] / cm[2]:>14.1f}x")


if __name__ == "__main__":
    main()
