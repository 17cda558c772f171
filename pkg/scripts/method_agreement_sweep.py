"""Time the three inversion methods on random corpora and check they agree.

    python3 scripts/method_agreement_sweep.py --count 100 --max-n 10 --float
"""

import argparse
import time
from collections import defaultdict

from blockinv import BlockTriangularMatrix, Mat, blocks_close, inverse_explicit, inverse_iterative, inverse_recursive
from blockinv.sampling import corpus

METHODS = {"explicit": inverse_explicit, "iterative": inverse_iterative, "recursive": inverse_recursive}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--float", action="store_true", help="also run in float mode and report the worst relative error")
    args = ap.parse_args()

    mats = corpus(args.seed, args.count, args.max_n, args.max_size)
    timings = defaultdict(float)
    mismatches = 0
    worst = 0.0
    for mm in mats:
        results = {}
        for name, fn in METHODS.items():
            t = time.perf_counter()
            results[name] = fn(mm)
            timings[name] += time.perf_counter() - t
        ref = results["explicit"]
        mismatches += sum(r != ref for r in results.values())
        if mm.grid.data * ref.data != Mat.identity(mm.ring, mm.partition.total):
            mismatches += 1
        if args.float:
            fm = BlockTriangularMatrix(mm.grid.to_float())
            t = time.perf_counter()
            f = inverse_explicit(fm)
            timings["explicit (float)"] += time.perf_counter() - t
            exact = ref.to_float()
            for j in range(1, mm.n + 1):
                for k in range(j, mm.n + 1):
                    a, b = f.block(j, k), exact.block(j, k)
                    if b.norm() > 0:
                        worst = max(worst, (a - b).norm() / b.norm())
                    assert blocks_close(a, b, 1e-6)

    print(f"{len(mats)} matrices, n <= {args.max_n}, block sizes <= {args.max_size}, seed {args.seed}")
    for name, secs in timings.items():
        print(f"  {name:18s} {secs:8.3f} s total  {1000 * secs / len(mats):8.2f} ms/matrix")
    print(f"  mismatches: {mismatches}")
    if args.float:
        print(f"  worst float relative block error: {worst:.2e}")


if __name__ == "__main__":
    main()
