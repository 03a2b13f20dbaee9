"""Compare the numba and numpy grid backends on growing square grids.

    python benchmarks/bench_grid.py [--max N] [--repeat R]

Each row times enumeration plus square-move classification of all paths
(0,0) -> (N,N) on an N x N grid with a diagonal of forbidden cells, and
checks that both backends return the same partition.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ctop.grid import GridRegion, HAVE_NUMBA
from ctop.grid import _kernels


def region(n: int) -> GridRegion:
    holes = [(k, k) for k in range(2, n, 3)]
    return GridRegion.build(n, n, holes)


def run(r: GridRegion, which: str) -> tuple[float, np.ndarray, np.ndarray]:
    t0 = time.perf_counter()
    codes = _kernels.enumerate_codes(r.width, r.height, which)
    labels, _ = _kernels.square_classes(codes, r.width, r.height, r.blocked(), which)
    return time.perf_counter() - t0, codes, labels


def canonical(labels: np.ndarray) -> np.ndarray:
    # relabel by first occurrence so partitions compare directly
    _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    return np.argsort(np.argsort(first))[inv]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=11)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    if HAVE_NUMBA:
        run(region(2), "numba")  # compile outside the timings
    print(f"{'n':>3} {'paths':>10} " + " ".join(f"{b:>10}" for b in backends) + "  speedup  same")
    for n in range(2, args.max + 1):
        r = region(n)
        best: dict[str, float] = {}
        parts = {}
        for b in backends:
            times = []
            for _ in range(args.repeat):
                dt, codes, labels = run(r, b)
                times.append(dt)
            best[b] = min(times)
            parts[b] = (codes, canonical(labels))
        same = all(
            np.array_equal(parts[b][0], parts["numpy"][0]) and np.array_equal(parts[b][1], parts["numpy"][1])
            for b in backends
        )
        speed = f"{best['numpy'] / best['numba']:7.1f}x" if "numba" in best else "      -"
        row = " ".join(f"{best[b] * 1e3:8.2f}ms" for b in backends)
        print(f"{n:>3} {len(parts['numpy'][0]):>10} {row}  {speed}  {same}")


if __name__ == "__main__":
    main()
