"""
Benchmark: compiled vs pure-Python subexpression enumeration kernel.

Usage: python3 benchmarks/bench_enumerate.py [--repeat N]
"""

import argparse
import random
import time

from bsbimod.coxeter import Permutation, Reflection, ReflExpr
from bsbimod import _enumpure

try:
    from bsbimod import _enumcore
except ImportError:
    _enumcore = None


def random_expr(rng, n, m):
    entries = []
    for _ in range(m):
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        entries.append(Reflection(i, j, n))
    return ReflExpr(n, tuple(entries))


def run(kernel, t, target):
    trans = [(p.i - 1, p.j - 1) for p in t.entries]
    return kernel.target_masks(t.n, trans, target)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    cases = []
    for n, m in [(4, 10), (4, 14), (5, 12), (5, 16), (6, 14)]:
        t = random_expr(rng, n, m)
        cases.append((f"n={n} m={m} identity", t, tuple(range(n))))
        # a reachable target: the product over a random subset of positions
        w = Permutation.identity(n)
        for p in t.entries:
            if rng.random() < 0.5:
                w = w * p.as_permutation()
        cases.append((f"n={n} m={m} random w", t,
                      tuple(x - 1 for x in w.images)))

    kernels = [("python", _enumpure)]
    if _enumcore is not None:
        kernels.append(("cython", _enumcore))

    for label, t, target in cases:
        line = [label.ljust(28)]
        results = {}
        for kname, kernel in kernels:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                out = run(kernel, t, target)
                best = min(best, time.perf_counter() - t0)
            results[kname] = (best, sorted(out))
            line.append(f"{kname}: {best * 1000:8.2f} ms")
        if len(results) == 2:
            assert results["python"][1] == results["cython"][1], label
            speed = results["python"][0] / results["cython"][0]
            line.append(f"speedup: {speed:5.1f}x")
        print("  ".join(line))


if __name__ == "__main__":
    main()
