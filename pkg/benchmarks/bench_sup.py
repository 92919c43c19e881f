"""Benchmark the match-length kernels: compiled path vs numpy fallback.

Runs the indexed (suffix-index) implementation on synthetic documents of
growing size, plus the naive oracle where affordable, first on the current
path and then re-executed with ``SIMPEVAL_NO_NUMBA=1`` for the fallback
comparison.

Usage: python3 benchmarks/bench_sup.py [--max-size 1000000]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from simpeval import _kernels

NAIVE_CEILING = 100_000  # quadratic scan above this is pointless to wait for


def synthetic_document(n_tokens: int, seed: int) -> np.ndarray:
    """Repetitive stream shaped like degenerate generator output."""
    rng = np.random.default_rng(seed)
    sentence = np.arange(12, dtype=np.int64)
    ids = np.tile(sentence, n_tokens // 12 + 1)[:n_tokens]
    noisy = rng.random(n_tokens) < 0.01
    ids[noisy] = rng.integers(12, 112, int(noisy.sum()))
    _, dense = np.unique(ids, return_inverse=True)
    return dense.astype(np.int64)


def run_current_path(sizes: list[int]) -> dict:
    _kernels.warmup()
    rows = {}
    for n in sizes:
        ids = synthetic_document(n, seed=n)
        n_eval = (n + 1) // 2
        t0 = time.perf_counter()
        indexed = _kernels.indexed_match_lengths(ids, n_eval)
        t_indexed = time.perf_counter() - t0
        t_naive = None
        if n <= NAIVE_CEILING and _kernels.NUMBA_ENABLED:
            t0 = time.perf_counter()
            naive = _kernels.naive_match_lengths(ids, n_eval)
            t_naive = time.perf_counter() - t0
            assert np.array_equal(naive, indexed)
        rows[n] = {"indexed": t_indexed, "naive": t_naive}
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-size", type=int, default=1_000_000)
    parser.add_argument(
        "--emit-json", action="store_true", help="internal: print raw timings"
    )
    args = parser.parse_args()

    sizes = [s for s in (10_000, 100_000, 500_000, 1_000_000) if s <= args.max_size]
    rows = run_current_path(sizes)

    if args.emit_json:
        print(json.dumps(rows))
        return 0

    label = "numba" if _kernels.NUMBA_ENABLED else "numpy fallback"
    env = dict(os.environ, SIMPEVAL_NO_NUMBA="1")
    other = subprocess.run(
        [sys.executable, __file__, "--max-size", str(args.max_size), "--emit-json"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    fallback = {int(k): v for k, v in json.loads(other.stdout).items()}

    print(f"current path: {label}")
    print(f"{'tokens':>10}  {'indexed':>10}  {'fallback idx':>12}  {'naive':>10}")
    for n in sizes:
        cur = rows[n]
        fb = fallback.get(n, {})
        naive = f"{cur['naive']:.3f}s" if cur["naive"] is not None else "-"
        fb_idx = f"{fb.get('indexed', float('nan')):.3f}s" if fb else "-"
        print(f"{n:>10}  {cur['indexed']:>9.3f}s  {fb_idx:>12}  {naive:>10}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
