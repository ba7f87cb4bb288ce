#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

Runs the bivariate-skew hot paths (multiplication and both exact
divisions) at protocol-like sizes and prints a timing table.

    python3 benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from orekex import backend, random_polynomial, ring_by_name


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    ring = ring_by_name("f125-skew2")
    rng = np.random.default_rng(2024)
    cases = []
    for d_f, d_g in ((25, 25), (50, 50), (100, 50), (150, 100)):
        f = random_polynomial(ring, d_f, 40 * d_f, rng)
        g = random_polynomial(ring, d_g, 40 * d_g, rng)
        cases.append((f"mul deg {d_f} x deg {d_g} ({len(f.terms)}x{len(g.terms)} terms)", f, g))

    backends = ["numpy"]
    if backend.HAVE_NUMBA:
        backends.insert(0, "numba")
        # warm the JIT outside the timed region
        w = random_polynomial(ring, 4, 8, rng)
        backend.skew2_mul(ring, w.terms, w.terms, "numba")
        backend.skew2_right_cofactor(ring, backend.skew2_mul(ring, w.terms, w.terms),
                                     w.terms, "numba")
        backend.skew2_left_cofactor(ring, backend.skew2_mul(ring, w.terms, w.terms),
                                    w.terms, "numba")
    else:
        print("numba not importable; timing the numpy fallback only")

    print(f"{'case':<48}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for label, f, g in cases:
        times = {}
        for b in backends:
            times[b] = time_call(lambda: backend.skew2_mul(ring, f.terms, g.terms, b),
                                 args.repeat)
        _print_row(label, times, backends)

        h = backend.skew2_mul(ring, f.terms, g.terms, backends[0])
        times = {b: time_call(
            lambda: backend.skew2_right_cofactor(ring, h, f.terms, b), args.repeat)
            for b in backends}
        _print_row(label.replace("mul", "rdiv"), times, backends)

        times = {b: time_call(
            lambda: backend.skew2_left_cofactor(ring, h, g.terms, b), args.repeat)
            for b in backends}
        _print_row(label.replace("mul", "ldiv"), times, backends)


def _print_row(label, times, backends):
    cells = "".join(f"{times[b] * 1e3:>10.1f}ms" for b in backends)
    if len(backends) == 2:
        speedup = times[backends[1]] / times[backends[0]]
        cells += f"  {speedup:>8.1f}x"
    print(f"{label:<48}{cells}")


if __name__ == "__main__":
    main()
