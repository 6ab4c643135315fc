"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]
"""
from __future__ import annotations

import argparse
import json
import random
import time

from zlab.kernels import backends


def _elementary(k, g: int) -> int:
    return k.encode([[int(r == c or (r == g and c == g + 1)) for c in range(k.size)]
                     for r in range(k.size)])


def _workloads(rng: random.Random):
    def closure_whole(mod):
        k = mod.UTKernel(4, 4)
        gens = [_elementary(k, g) for g in range(3)]
        return lambda: k.closure(gens)

    def commutators(mod):
        k = mod.UTKernel(3, 9)
        A = [rng.randrange(k.order) for _ in range(300)]
        B = [rng.randrange(k.order) for _ in range(300)]
        return lambda: k.commutators(A, B)

    def powers(mod):
        k = mod.UTKernel(4, 3)
        A = list(range(k.order))
        return lambda: k.powers(A, 9)

    def normal_check(mod):
        k = mod.UTKernel(4, 4)
        H = list(range(0, k.order, 4 ** 3))
        gens = [_elementary(k, g) for g in range(3)]
        return lambda: k.is_normalized_by(H, gens)

    def rank(mod):
        rows = [[rng.randrange(7) for _ in range(240)] for _ in range(200)]
        return lambda: mod.rank_mod_p(rows, 7)

    return {
        "closure U_3(Z/4) (order 4096)": closure_whole,
        "commutators 300x300 in U_2(Z/9)": commutators,
        "9th powers of all of U_3(Z/3)": powers,
        "normality of a 64-element subgroup": normal_check,
        "rank mod 7 of 200x240": rank,
    }


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best of N runs (default: 3)")
    parser.add_argument("--json", action="store_true", help="print results as JSON")
    args = parser.parse_args(argv)

    mods = backends()
    results = []
    for name, make in _workloads(random.Random(0)).items():
        row = {"workload": name}
        for label, mod in mods.items():
            row[label] = _time(make(mod), args.repeat)
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        results.append(row)

    if args.json:
        print(json.dumps(results, indent=2))
        return 0
    print(f"{'workload':<38} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}")
    for row in results:
        cy = f"{row['cython']:11.4f}" if "cython" in row else f"{'n/a':>11}"
        sp = f"{row['speedup']:7.1f}x" if "speedup" in row else f"{'':>8}"
        print(f"{row['workload']:<38} {row['python']:11.4f} {cy} {sp}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
