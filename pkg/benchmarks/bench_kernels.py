"""Compare the compiled and pure-Python elimination kernels on the same workload.

    python3 benchmarks/bench_kernels.py [--size 120] [--rows 90] [--repeat 3]
"""
import argparse
import random
import time
from fractions import Fraction

from redop import _pykernels

try:
    from redop import _ckernels
except ImportError:
    _ckernels = None


def workload(size, nrows, density, seed):
    rng = random.Random(seed)
    rows = []
    for _ in range(nrows):
        k = max(2, int(size * density))
        rows.append({g: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))
                     for g in rng.sample(range(size), k)})
    return rows


def run(impl, rows, repeat):
    """Best time of a full elimination plus an intersection of two halves."""
    half = len(rows) // 2
    size = 1 + max(max(r) for r in rows)
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = impl.reduce_rows(rows)
        inter = impl.intersect_rows(rows[:half] + rows[-2:], rows[half - 2:], size)
        best = min(best, time.perf_counter() - t)
    return best, (out, inter)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=120)
    ap.add_argument("--rows", type=int, default=90)
    ap.add_argument("--density", type=float, default=0.05)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    rows = workload(a.size, a.rows, a.density, a.seed)
    tp, bp = run(_pykernels, rows, a.repeat)
    print(f"python  eliminate+intersect: {tp * 1000:9.1f} ms  (rank {len(bp[0])})")
    if _ckernels is None:
        print("cython  not built")
        return
    tc, bc = run(_ckernels, rows, a.repeat)
    assert bc == bp, "backends disagree"
    print(f"cython  eliminate+intersect: {tc * 1000:9.1f} ms  (rank {len(bc[0])})")
    print(f"speedup {tp / tc:.2f}x, identical results")


if __name__ == "__main__":
    main()
