"""Compare the numba and numpy kernel backends on the hot bipolar kernels.

Run with: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from cmlhdc.backend import (
    _bipolar_matvec_nb,
    _bipolar_matvec_np,
    _sum_clip_nb,
    _sum_clip_np,
)


def _time(fn, *args, repeats=50):
    fn(*args)  # warm-up (numba compiles here)
    start = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - start) / repeats


def main():
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18}{'shape':<18}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>10}")
    for d in (1_000, 10_000, 100_000):
        stack = rng.choice(np.array([-1, 1], dtype=np.int8), size=(25, d))
        t_np = _time(_sum_clip_np, stack)
        t_nb = _time(_sum_clip_nb, stack) if _sum_clip_nb else float("nan")
        assert np.array_equal(_sum_clip_np(stack), _sum_clip_nb(stack))
        print(f"{'sum_clip':<18}{f'25x{d}':<18}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}"
              f"{t_np / t_nb:>10.2f}")
    for n, d in ((25, 1_000), (25, 10_000), (100, 10_000)):
        mat = rng.choice(np.array([-1, 1], dtype=np.int8), size=(n, d))
        vec = rng.choice(np.array([-1, 1], dtype=np.int8), size=d)
        t_np = _time(_bipolar_matvec_np, mat, vec)
        t_nb = _time(_bipolar_matvec_nb, mat, vec) if _bipolar_matvec_nb else float("nan")
        assert np.array_equal(_bipolar_matvec_np(mat, vec), _bipolar_matvec_nb(mat, vec))
        print(f"{'bipolar_matvec':<18}{f'{n}x{d}':<18}{t_np * 1e3:>12.3f}"
              f"{t_nb * 1e3:>12.3f}{t_np / t_nb:>10.2f}")


if __name__ == "__main__":
    main()
