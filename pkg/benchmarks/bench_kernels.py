"""Time the pure-Python and compiled kernels on identical workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import sys
import timeit
from math import gcd

from tdelpezzo import _purekernels as pure
from tdelpezzo import kernels


def _germs(count: int, max_r: int, seed: int = 1):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r = rng.randint(2, max_r)
        a = rng.randint(1, r - 1)
        if gcd(a, r) == 1:
            out.append((r, a))
    return out


def workloads(mod):
    germs = _germs(20000, 10**6)
    chains = [mod.hj_expansion(r, a) for r, a in germs[:5000]]
    hexagon = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    return {
        "hj_expansion x20000": lambda: [mod.hj_expansion(r, a) for r, a in germs],
        "t_witness x20000": lambda: [mod.t_witness(r, a) for r, a in germs],
        "wahl_is_t x5000": lambda: [mod.wahl_is_t(c) for c in chains],
        "t_sweep(6, 6)": lambda: mod.t_sweep(6, 6),
        "point count n=200": lambda: mod.count_polygon_points(hexagon, 200, -200, 200),
    }


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    ck = kernels.compiled
    if ck is None:
        print("compiled extension not available; build with `pip install -e .`", file=sys.stderr)
        return 1
    py_jobs, c_jobs = workloads(pure), workloads(ck)
    print(f"{'workload':<22} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name in py_jobs:
        assert py_jobs[name]() == c_jobs[name](), name
        tp = min(timeit.repeat(py_jobs[name], number=1, repeat=args.repeat))
        tc = min(timeit.repeat(c_jobs[name], number=1, repeat=args.repeat))
        print(f"{name:<22} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
