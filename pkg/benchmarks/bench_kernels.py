#!/usr/bin/env python3
"""Time the hot kernels on the active implementation, or compare both.

Plain run (uses whichever path the PSISPEC_NO_NUMBA flag selects):

    python benchmarks/bench_kernels.py --n 2000000

Side-by-side run (re-executes this script in two subprocesses, one per
implementation, and prints a combined table with speedups):

    python benchmarks/bench_kernels.py --compare
"""

import argparse
import json
import os
import subprocess
import sys
import time


def best_of(repeat, fn, *args, **kwargs):
    timings = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args, **kwargs)
        timings.append(time.perf_counter() - start)
    return min(timings)


def run_benchmarks(n, repeat):
    import numpy as np

    import psispec as ps

    # Warm-up: touches every kernel once so JIT compilation (when the
    # accelerated path is active) is not charged to the timings.
    warm = ps.fluctuation_series(4096)
    ps.burg_fit(ps.remove_mean(warm), order=1)
    zeros = ps.load_zeros(ps.bundled_zeros_path())
    ps.psi_fluc_from_zeros(np.array([2.5, 10.5]), zeros, zeros.count)

    timings = {}
    label_n = f"{n:.0e}".replace("e+0", "e").replace("e+", "e")
    timings[f"sieve + psi prefix (n={label_n})"] = best_of(
        repeat, ps.psi_series, n
    )
    psi = ps.psi_series(n)
    y = ps.remove_mean(psi.values - ps.smooth_part(psi.x))
    timings["burg fit, order 1"] = best_of(repeat, ps.burg_fit, y, 1)
    pts = np.linspace(2.5, 1e6, 200)
    timings["zero-pair sum (200 pts, K=2000)"] = best_of(
        repeat, ps.psi_fluc_from_zeros, pts, zeros, zeros.count
    )
    return ps.ACTIVE_IMPL, timings


def compare(n, repeat):
    results = {}
    for flag, label in (("0", "numba"), ("1", "numpy")):
        env = dict(os.environ, PSISPEC_NO_NUMBA=flag)
        proc = subprocess.run(
            [sys.executable, __file__, "--n", str(n), "--repeat", str(repeat),
             "--json"],
            env=env, capture_output=True, text=True, check=True,
        )
        payload = json.loads(proc.stdout)
        if payload["impl"] != label:
            raise RuntimeError(
                f"expected impl {label!r}, subprocess reports {payload['impl']!r}"
                " (is numba installed?)"
            )
        results[label] = payload["timings"]

    names = list(results["numba"])
    width = max(len(name) for name in names)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name in names:
        fast = results["numba"][name]
        slow = results["numpy"][name]
        print(
            f"{name:<{width}}  {fast:>9.4f}s  {slow:>9.4f}s  "
            f"{slow / fast:>7.1f}x"
        )


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=2_000_000,
                        help="grid length for the sieve benchmark")
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions per kernel (best time is kept)")
    parser.add_argument("--compare", action="store_true",
                        help="benchmark both implementations in subprocesses")
    parser.add_argument("--json", action="store_true",
                        help="emit machine-readable results (used by --compare)")
    args = parser.parse_args(argv)

    if args.compare:
        compare(args.n, args.repeat)
        return

    impl, timings = run_benchmarks(args.n, args.repeat)
    if args.json:
        print(json.dumps({"impl": impl, "timings": timings}))
        return
    print(f"implementation: {impl}")
    for name, seconds in timings.items():
        print(f"{name:<35} {seconds:>9.4f}s")


if __name__ == "__main__":
    main()
