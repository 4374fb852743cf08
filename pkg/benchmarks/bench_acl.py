"""Compare the numba and numpy first-match ACL kernels.

    python benchmarks/bench_acl.py [--entries 64] [--packets 200000] [--repeat 5]

Both kernels run on the same random arrays; their outputs must agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from netcfg.verifier import _kernels


def random_case(n_entries: int, n_packets: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    wildcards = np.array([0, 0xFF, 0xFFFF, 0xFFFFFF, 0xFFFFFFFF], dtype=np.int64)
    entries = np.empty((n_entries, 7), dtype=np.int64)
    entries[:, 0] = rng.integers(0, 2, n_entries)
    entries[:, 1] = rng.integers(0, 4, n_entries)
    entries[:, 2] = rng.integers(0, 2**32, n_entries)
    entries[:, 3] = rng.choice(wildcards, n_entries)
    entries[:, 4] = rng.integers(0, 2**32, n_entries)
    entries[:, 5] = rng.choice(wildcards, n_entries)
    entries[:, 6] = rng.choice([-1, 22, 53, 80, 443], n_entries)
    packets = np.empty((n_packets, 4), dtype=np.int64)
    packets[:, 0] = rng.integers(1, 4, n_packets)
    packets[:, 1] = rng.integers(0, 2**32, n_packets)
    packets[:, 2] = rng.integers(0, 2**32, n_packets)
    packets[:, 3] = rng.choice([22, 53, 80, 443, 8080], n_packets)
    return entries, packets


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--entries", type=int, default=64)
    parser.add_argument("--packets", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    entries, packets = random_case(args.entries, args.packets)
    reference = _kernels.first_match_numpy(entries, packets)
    print(f"{args.entries} entries x {args.packets} packets, best of {args.repeat}")
    t_numpy = best_of(lambda: _kernels.first_match_numpy(entries, packets), args.repeat)
    print(f"  numpy  {t_numpy * 1e3:9.2f} ms")
    if not _kernels.HAVE_NUMBA:
        print("  numba  unavailable")
        return
    start = time.perf_counter()
    assert np.array_equal(_kernels.first_match_numba(entries, packets), reference)
    print(f"  numba  {(time.perf_counter() - start) * 1e3:9.2f} ms (first call, includes compilation)")
    t_numba = best_of(lambda: _kernels.first_match_numba(entries, packets), args.repeat)
    print(f"  numba  {t_numba * 1e3:9.2f} ms  ({t_numpy / t_numba:.1f}x faster than numpy)")


if __name__ == "__main__":
    main()
