#!/usr/bin/env python3
"""Compare the compiled and pure-Python kernels on the sweep hot loops.

Usage: python benchmarks/bench_kernels.py [--p 7] [--forms 20000]
"""

from __future__ import annotations

import argparse
import random
import time


def bench_igusa(kern, p: int, n: int) -> float:
    rng = random.Random(7)
    forms = [[rng.randrange(p) for _ in range(7)] for _ in range(n)]
    t0 = time.perf_counter()
    for a in forms:
        kern.igusa_mod_p(a, p)
    return time.perf_counter() - t0


def bench_enumeration(kern, p: int, degree: int) -> tuple[float, int]:
    t0 = time.perf_counter()
    pts = kern.enumerate_moduli(p, degree)
    return time.perf_counter() - t0, len(pts)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=7)
    parser.add_argument("--forms", type=int, default=20000)
    args = parser.parse_args()

    from g2moduli._kernels import get_backend, pure

    backends = [("pure", pure)]
    try:
        backends.append(("compiled", get_backend("compiled")))
    except ImportError:
        print("compiled extension not built; benchmarking pure only")

    p = args.p
    print(f"igusa_mod_p on {args.forms} random forms over F_{p}:")
    base = None
    for name, kern in backends:
        dt = bench_igusa(kern, p, args.forms)
        rate = args.forms / dt
        speedup = "" if base is None else f"  ({base / dt:.1f}x)"
        base = base or dt
        print(f"  {name:9s} {dt:8.3f}s   {rate:10.0f} forms/s{speedup}")

    print(f"enumerate_moduli(p={p}, degree=5)  [{p}^5 = {p**5} forms]:")
    base = None
    for name, kern in backends:
        dt, count = bench_enumeration(kern, p, 5)
        speedup = "" if base is None else f"  ({base / dt:.1f}x)"
        base = base or dt
        print(f"  {name:9s} {dt:8.3f}s   {count} points{speedup}")

    if any(name == "compiled" for name, _ in backends):
        comp = dict(backends)["compiled"]
        dt, count = bench_enumeration(comp, p, 6)
        print(f"enumerate_moduli(p={p}, degree=6)  [{p}^6 = {p**6} forms]:")
        print(f"  compiled  {dt:8.3f}s   {count} points")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
