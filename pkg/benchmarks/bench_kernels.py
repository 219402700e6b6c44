"""Compare the compiled and pure-Python MFV kernels on bootstrap-shaped work.

Run from the repository root after installing the package:

    python3 benchmarks/bench_kernels.py [--rows 210000] [--n 26] [--repeat 3]

Times fit_rows on a (rows, n) resample matrix for each backend at 1 and 8
threads, checks that the backends agree, and prints a small table with the
speedup of the compiled path over the pure one.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from robucl import _kernels
from robucl.mfv import MfvConfig


def _workload(rows: int, n: int, seed: int = 1234) -> np.ndarray:
    rng = np.random.default_rng(seed)
    base = rng.normal(2.2, 0.3, size=n)
    idx = rng.integers(0, n, size=(rows, n))
    return np.ascontiguousarray(base[idx])


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=210_000)
    parser.add_argument("--n", type=int, default=26)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    cfg = MfvConfig()
    rows = _workload(args.rows, args.n)
    backends = []
    if _kernels._fast is not None:
        backends.append("compiled")
    backends.append("pure")
    if "compiled" not in backends:
        print("note: compiled extension unavailable, timing pure backend only")

    results = {}
    for backend in backends:
        for threads in (1, 8):
            if backend == "pure" and threads > 1:
                continue  # pure path holds the GIL; threads buy nothing
            m, eps, iters, conv = _kernels.fit_rows(
                rows, cfg.tol_m, cfg.tol_eps, cfg.max_iter,
                threads=threads, backend=backend,
            )
            # resamples with heavy ties can need >1000 passes; a handful
            # hitting the cap is expected, wholesale failure is not
            assert conv.mean() > 0.99, "benchmark workload failed to converge"
            elapsed = _time(
                lambda: _kernels.fit_rows(
                    rows, cfg.tol_m, cfg.tol_eps, cfg.max_iter,
                    threads=threads, backend=backend,
                ),
                args.repeat,
            )
            results[(backend, threads)] = (elapsed, m)

    if "compiled" in backends:
        diff = float(np.max(np.abs(results[("compiled", 1)][1] - results[("pure", 1)][1])))
        print(f"backend agreement: max |m_compiled - m_pure| = {diff:.3e}")
        assert diff < 1e-6, "backends disagree beyond tolerance"

    print(f"\nworkload: {args.rows} rows x {args.n} values, best of {args.repeat}")
    print(f"{'backend':<10} {'threads':>7} {'seconds':>9} {'rows/s':>12}")
    for (backend, threads), (elapsed, _) in sorted(results.items()):
        print(f"{backend:<10} {threads:>7} {elapsed:>9.3f} {args.rows / elapsed:>12,.0f}")

    if "compiled" in backends:
        base = results[("pure", 1)][0]
        for threads in (1, 8):
            sp = base / results[("compiled", threads)][0]
            print(f"compiled @{threads} thread(s) is {sp:.1f}x the pure backend")


if __name__ == "__main__":
    main()
