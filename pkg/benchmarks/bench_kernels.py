"""Timing comparison of the kernel backends on representative loads.

Runs the three hot kernels (binomial multiply/divide passes, the window
profile, the height scan) against both the compiled extension and the
numpy fallback, on the profile of one ternary n.  Purely informational;
nothing here affects library results.

Usage: python benchmarks/bench_kernels.py [--p P --q Q --r R] [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cyclo._kernels import _pk
from cyclo.binary import cached_table
from cyclo.numtheory import make_triple

try:
    from cyclo._kernels import _ck
except ImportError:
    _ck = None


def dense_passes(mod, triple, deg):
    p, q, r = triple.p, triple.q, triple.r
    c = np.zeros(deg + 1, dtype=np.int64)
    c[0] = 1
    for d in sorted((p, q, r, p * q * r)):
        if d <= deg:
            mod.mul_one_minus_pass(c, d)
    for d in sorted((1, p * q, p * r, q * r)):
        if d <= deg:
            mod.div_one_minus_pass(c, d)
    return c


def window_profile(mod, triple, deg):
    table = cached_table(triple.p, triple.q)
    return mod.chi_profile(table.coeffs, triple.p, triple.q, triple.r, deg)


def bench(label, fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    print(f"  {label:<28} {best * 1000:10.2f} ms")
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=19)
    ap.add_argument("--q", type=int, default=53)
    ap.add_argument("--r", type=int, default=859)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    triple = make_triple(args.p, args.q, args.r)
    deg = triple.degree
    print(f"n = {triple.n}, degree = {deg}")

    backends = [("numpy", _pk)]
    if _ck is not None:
        backends.append(("compiled", _ck))
    else:
        print("compiled backend not available; benchmarking numpy only")

    results = {}
    for name, mod in backends:
        print(f"{name}:")
        dense = bench("dense mul/div passes", lambda: dense_passes(mod, triple, deg), args.repeat)
        prof = bench("window profile", lambda: window_profile(mod, triple, deg), args.repeat)
        bench("height scan", lambda: mod.height_scan(prof), args.repeat)
        results[name] = (dense, prof)

    if len(results) == 2:
        d_np, p_np = results["numpy"]
        d_ck, p_ck = results["compiled"]
        same = np.array_equal(d_np, d_ck) and np.array_equal(p_np, p_ck)
        print(f"backends agree on all outputs: {same}")
        return 0 if same else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
