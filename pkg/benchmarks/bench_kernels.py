"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat R]
"""

import argparse
import time

from instar_turan import _backend
from instar_turan.constructions import construct_lower
from instar_turan.detect import is_free
from instar_turan.search import SearchConfig, exact_turan, heuristic_turan
from instar_turan.verify import random_stream


def _detect_batch():
    graphs = list(random_stream(range(6, 13), 300, seed=11))
    return lambda: [is_free(g, k) for g in graphs for k in (2, 3)]


def _construction_check():
    # orders above 64 always run on the Python kernels
    cases = [(construct_lower(n=n, k=k), k) for k in (2, 3, 4) for n in range(3 * k + 1, 64, 5)]
    return lambda: [is_free(g, k) for g, k in cases]


CASES = {
    "detect random (n<=12)": _detect_batch,
    "detect constructions (n<64)": _construction_check,
    "exact (6,2)": lambda: (lambda: exact_turan(6, 2)),
    "exact (7,3)": lambda: (lambda: exact_turan(7, 3)),
    "oracle (5,2)": lambda: (lambda: _backend.kernels(5).oracle_scan(5, 2)),
    "heuristic (16,2) x5": lambda: (lambda: heuristic_turan(16, 2, SearchConfig(mode="heuristic", seed=1, restarts=5))),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _backend.available()
    print(f"{'case':32s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label, make in CASES.items():
        row = []
        for b in backends:
            prev = _backend.use_backend(b)
            try:
                row.append(best_of(make(), args.repeat))
            finally:
                _backend.use_backend(prev)
        line = f"{label:32s}" + "".join(f"{t * 1000:10.1f}ms" for t in row)
        if len(row) > 1:
            line += f"{row[1] / row[0]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
