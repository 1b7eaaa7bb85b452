#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--pairs N] [--length L]
"""

import argparse
import random
import string
import time

from scenetext.kernels import _pyfallback

try:
    from scenetext.kernels import _speedups
except ImportError:
    _speedups = None


def make_workload(n_pairs: int, length: int, seed: int = 7):
    rng = random.Random(seed)
    alphabet = string.ascii_lowercase + " "
    strings = [
        ("".join(rng.choice(alphabet) for _ in range(rng.randint(length // 2, length))),
         "".join(rng.choice(alphabet) for _ in range(rng.randint(length // 2, length))))
        for _ in range(n_pairs)
    ]
    id_seqs = [
        ([rng.randint(0, 50) for _ in range(rng.randint(length // 2, length))],
         [rng.randint(0, 50) for _ in range(rng.randint(length // 2, length))])
        for _ in range(n_pairs)
    ]
    return strings, id_seqs


def bench(fn, pairs):
    start = time.perf_counter()
    acc = 0
    for a, b in pairs:
        acc += fn(a, b)
    return time.perf_counter() - start, acc


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--pairs", type=int, default=5000)
    parser.add_argument("--length", type=int, default=60)
    args = parser.parse_args()

    strings, id_seqs = make_workload(args.pairs, args.length)
    rows = []
    for name, fn_pairs in (("levenshtein", strings), ("lcs_length", id_seqs)):
        py_time, py_acc = bench(getattr(_pyfallback, name), fn_pairs)
        row = [name, f"{py_time:.3f}s", "-", "-"]
        if _speedups is not None:
            cy_time, cy_acc = bench(getattr(_speedups, name), fn_pairs)
            assert cy_acc == py_acc, f"{name}: backends disagree"
            row[2] = f"{cy_time:.3f}s"
            row[3] = f"{py_time / cy_time:.1f}x"
        rows.append(row)

    print(f"workload: {args.pairs} pairs, max length {args.length}")
    header = ["kernel", "python", "cython", "speedup"]
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(4)]
    for r in [header] + rows:
        print("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    if _speedups is None:
        print("compiled extension not available; showing fallback only")


if __name__ == "__main__":
    main()
