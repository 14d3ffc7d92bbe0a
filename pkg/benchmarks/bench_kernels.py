"""Compiled vs interpreted integer-search kernels.

Times each kernel through its numba dispatcher and through ``.py_func`` on
the same inputs, after one warm-up call so compilation is not counted.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from minmaxdelay import _kernels
from minmaxdelay.gadgets import building_block, gap_composite
from minmaxdelay.intsolve import _Arrays


def best_of(fn, args, repeat):
    fn(*args)
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def cases():
    block = _Arrays(building_block(12))
    yield ("enumerate_paths_csr block(12)", _kernels.enumerate_paths_csr,
           (block.indptr, block.adj_edge, block.adj_head, block.delay, block.s, block.t,
            len(block.node_index), 10_000))

    comp = _Arrays(gap_composite(7))
    yield ("delay_budget_bound composite(7)", _kernels.delay_budget_bound,
           (comp.capacity.copy(), comp.tail, comp.head, comp.delay, len(comp.node_index), comp.s, comp.t, 3, 6))

    # Whole composite network (components not split), one below the integer
    # optimum: the branch-and-bound has to exhaust the space.
    comp = _Arrays(gap_composite(6))
    D = 2
    paths = sorted((p for p in comp.paths(10_000) if p[1] <= D), key=lambda p: (-p[1], p[0]))
    ptr = np.zeros(len(paths) + 1, np.int64)
    flat = []
    for k, (edges, _) in enumerate(paths):
        flat.extend(edges)
        ptr[k + 1] = len(flat)
    yield ("search_max_rate composite(6), D=2", _kernels.search_max_rate,
           (ptr, np.array(flat, np.int64), comp.capacity.copy(), comp.tail, comp.head, comp.delay,
            len(comp.node_index), comp.s, comp.t, D, 5, 10**7))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timed runs per kernel; the best is kept")
    args = parser.parse_args()
    if not _kernels.KERNELS_JITTED:
        raise SystemExit("numba is disabled (MINMAXDELAY_JIT=0 or not installed); nothing to compare")
    print(f"{'kernel':<34} {'jit [ms]':>10} {'python [ms]':>12} {'speedup':>9}")
    for name, kernel, kernel_args in cases():
        fast = best_of(kernel, kernel_args, args.repeat)
        slow = best_of(kernel.py_func, kernel_args, args.repeat)
        print(f"{name:<34} {fast * 1e3:>10.3f} {slow * 1e3:>12.1f} {slow / fast:>8.0f}x")


if __name__ == "__main__":
    main()
