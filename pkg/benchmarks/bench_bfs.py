"""Time the breadth-first orbit search with the numba and numpy frontier kernels.

    python benchmarks/bench_bfs.py [--word-len 8] [--param-bound 6] [--repeat 3]

The numba kernel is compiled (or loaded from cache) once before timing.
"""

import argparse
import statistics
import time

import numpy as np

from fmlattice import _kernels, all_types
from fmlattice.reduction_engine import _bfs_generators, _bfs_reachable_keys, default_bfs_cap


def time_search(lam, word_len, param_bound, backend, repeat):
    cap = default_bfs_cap(param_bound)
    times = []
    for _ in range(repeat):
        _bfs_reachable_keys.cache_clear()
        t0 = time.perf_counter()
        keys = _bfs_reachable_keys(*lam, word_len, param_bound, cap, backend)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), len(keys)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--word-len", type=int, default=8)
    p.add_argument("--param-bound", type=int, default=6)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()

    backends = ["numpy"]
    if _kernels.expand_numba is not None:
        backends.insert(0, "numba")
        # warm up the JIT
        _kernels.expand_numba(np.zeros((1, 4), dtype=np.int64), _bfs_generators(1, 2, 1), 5)
    else:
        print("numba unavailable, timing numpy only")

    lams = sorted({(st.lambda1, st.lambda2) for st in all_types()})
    print(f"word_len={args.word_len} param_bound={args.param_bound} cap={default_bfs_cap(args.param_bound)}")
    print(f"{'lambda':>8} {'states':>8} " + " ".join(f"{b + ' s':>9}" for b in backends) + "  speedup")
    for lam in lams:
        res = {b: time_search(lam, args.word_len, args.param_bound, b, args.repeat) for b in backends}
        counts = {n for _, n in res.values()}
        assert len(counts) == 1, f"backends disagree on {lam}: {res}"
        row = f"{str(lam):>8} {counts.pop():>8} " + " ".join(f"{res[b][0]:9.3f}" for b in backends)
        if len(backends) == 2:
            row += f"  {res['numpy'][0] / res['numba'][0]:6.2f}x"
        print(row)


if __name__ == "__main__":
    main()
