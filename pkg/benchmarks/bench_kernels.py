#!/usr/bin/env python3
"""Benchmark the compiled ribbon kernels against the pure-Python twin.

Runs the two hot operations (canonical form, pairing scan) through both
backends on identical inputs and reports wall time and speedup.  Run from
the repository root:

    python benchmarks/bench_kernels.py [--edges 6]
"""

import argparse
import random
import time

import nlab._kernels_py as pure

try:
    import nlab._kernels as compiled
except ImportError:
    compiled = None


def random_connected_maps(count, max_edges, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(2, max_edges)
        n = 2 * k
        darts = list(range(n))
        rng.shuffle(darts)
        iota = [0] * n
        for i in range(0, n, 2):
            a, b = darts[i], darts[i + 1]
            iota[a] = b
            iota[b] = a
        g = list(range(n))
        rng.shuffle(g)
        gamma = [0] * n
        for i in range(n):
            gamma[g[i]] = g[(i + 1) % n]
        labels = [0] * n
        out.append((iota, gamma, labels))
    return out


def bench_canonical(mod, maps, repeat):
    t0 = time.perf_counter()
    acc = 0
    for _ in range(repeat):
        for iota, gamma, labels in maps:
            code, perms = mod.canonical_data(iota, gamma, labels)
            acc += len(perms)
    return time.perf_counter() - t0, acc


def bench_scan(mod, valence_lists):
    t0 = time.perf_counter()
    total = 0
    for vals in valence_lists:
        total += len(mod.scan_pairings(list(vals), -1, -1))
    return time.perf_counter() - t0, total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--edges", type=int, default=6)
    ap.add_argument("--maps", type=int, default=400)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    maps = random_connected_maps(args.maps, args.edges)
    backends = [("python", pure)]
    if compiled is not None:
        backends.append(("cython", compiled))
    else:
        print("compiled kernel not built; benchmarking pure python only")

    print("== canonical_data: %d maps x%d" % (args.maps, args.repeat))
    times = {}
    for name, mod in backends:
        dt, acc = bench_canonical(mod, maps, args.repeat)
        times[name] = dt
        print("  %-7s %8.3fs  (checksum %d)" % (name, dt, acc))
    if len(times) == 2:
        print("  speedup: %.1fx" % (times["python"] / times["cython"]))

    valence_lists = []
    n = 2 * args.edges
    from nlab.ribbon.census import partitions
    valence_lists = partitions(n, 3)
    print("== scan_pairings: all valence-3 partitions of %d darts" % n)
    times = {}
    for name, mod in backends:
        dt, total = bench_scan(mod, valence_lists)
        times[name] = dt
        print("  %-7s %8.3fs  (%d classes)" % (name, dt, total))
    if len(times) == 2:
        print("  speedup: %.1fx" % (times["python"] / times["cython"]))


if __name__ == "__main__":
    main()
