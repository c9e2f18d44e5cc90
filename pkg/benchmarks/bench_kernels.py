"""Compare the compiled lattice kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Runs the root classifier and the defect knapsack on the n=12 nilpotent
boxes, checks that both backends return identical arrays, and prints the
best wall time of each.
"""

import argparse
import time

import numpy as np

from adsp import kernels
from adsp.rootsys import StarQuiver, box_size, defect_p, enumerate_Rlambda

CASES = [
    ("(12;8,4|8,4|8,4)", (2, 2, 2), (12, 8, 4, 8, 4, 8, 4)),
    ("(12;8,4,2|8,4|8,4)", (3, 2, 2), (12, 8, 4, 2, 8, 4, 8, 4)),
]


def best_time(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = sorted(kernels.BACKENDS)
    if "compiled" not in backends:
        print("compiled extension not built; timing the fallback only")
    print(f"{'box':22} {'points':>9} {'kernel':10} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, arms, alpha in CASES:
        q = StarQuiver(arms)
        a = np.asarray(alpha, dtype=np.int64)
        edges = list(q.edges)
        parts = [b for b in enumerate_Rlambda(q, alpha, (0,) * q.size) if b != alpha]
        P = np.asarray(parts, dtype=np.int64)
        V = np.asarray([defect_p(q, b) for b in parts], dtype=np.int64)
        jobs = {
            "classify": lambda mod: mod.classify_box(a, edges),
            "knapsack": lambda mod: mod.knapsack(a, P, V),
        }
        for kname, job in jobs.items():
            timings, outputs = {}, {}
            for b in backends:
                timings[b], outputs[b] = best_time(lambda: job(kernels.BACKENDS[b]), args.repeat)
            ref = outputs[backends[0]]
            for b in backends[1:]:
                out = outputs[b]
                same = all(np.array_equal(x, y) for x, y in zip(ref, out)) if isinstance(ref, tuple) else np.array_equal(ref, out)
                if not same:
                    raise SystemExit(f"backends disagree on {kname} for {name}")
            speed = f"{timings['python'] / timings['compiled']:8.1f}x" if "compiled" in timings else ""
            cells = " ".join(f"{timings[b]:9.3f}s" for b in backends)
            print(f"{name:22} {box_size(alpha):>9} {kname:10} {cells} {speed}")


if __name__ == "__main__":
    main()
