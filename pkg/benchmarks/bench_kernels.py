"""Compare the numba kernels with their numpy counterparts.

Both backends are imported side by side (the numba one is compiled here
regardless of ``RDCONG_DISABLE_NUMBA``), checked for identical output, then
timed with a warm-up call excluded.

    python3 benchmarks/bench_kernels.py [--sizes 1000 4000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np
from numba import njit

from rdcong.kernels import _loops, _vector
from rdcong.special import pentagonal_terms

M = 24


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(n: int):
    rng = np.random.default_rng(n)
    a = rng.integers(0, M, n).astype(np.int64)
    b = rng.integers(0, M, n).astype(np.int64)
    a[0] = 1
    exps, coefs = pentagonal_terms(1, n)
    exps = np.asarray(exps, dtype=np.int64)
    coefs = np.asarray(coefs, dtype=np.int64) % M
    neg = (-coefs) % M
    nmax = 10 * n  # the DP is cheap per entry, so give it a longer table
    return {
        "conv_mod": (a, b, n, M),
        "inv_mod": (a, n, M, 1),
        "sparse_mul_mod": (a, exps, coefs, M),
        "sparse_div_mod": (a, exps, neg, M),
        "rd_counts_mod": (nmax, 4, 9, M),
    }


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1000, 4000])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    print(f"{'kernel':<16}{'n':>8}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for n in args.sizes:
        for name, call_args in cases(n).items():
            fast = njit(cache=True)(getattr(_loops, name))
            slow = getattr(_vector, name)
            copy = lambda: tuple(x.copy() if isinstance(x, np.ndarray) else x for x in call_args)
            out_fast = fast(*copy())  # compiles
            out_slow = slow(*copy())
            if not np.array_equal(np.asarray(out_fast) % M, np.asarray(out_slow) % M):
                raise SystemExit(f"{name}: backends disagree at n={n}")
            t_fast = _best(lambda: fast(*copy()), args.repeat)
            t_slow = _best(lambda: slow(*copy()), args.repeat)
            size = call_args[0] if name == "rd_counts_mod" else n
            print(f"{name:<16}{size:>8}{t_fast:>12.4f}{t_slow:>12.4f}{t_slow / t_fast:>10.1f}")


if __name__ == "__main__":
    main()
