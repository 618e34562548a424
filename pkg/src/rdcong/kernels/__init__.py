"""Hot numeric kernels with an optional numba backend.

Modular kernels (int64 residues, modulus below ``2**31``) are compiled with
``numba.njit`` unless numba is missing or ``RDCONG_DISABLE_NUMBA`` is set to a
non-empty value other than ``0``; then the numpy implementations are used.
Exact (object-array) arithmetic always goes through the numpy kernels.
"""

from __future__ import annotations

import os

from . import _loops, _vector

MAX_FAST_MODULUS = 1 << 31


def _numba_wanted() -> bool:
    return os.environ.get("RDCONG_DISABLE_NUMBA", "") in ("", "0")


try:
    if not _numba_wanted():
        raise ImportError("disabled by RDCONG_DISABLE_NUMBA")
    from numba import njit
except ImportError:
    njit = None

BACKEND = "numba" if njit is not None else "numpy"

if njit is not None:
    _jit = {
        name: njit(cache=True)(getattr(_loops, name))
        for name in ("conv_mod", "inv_mod", "sparse_mul_mod", "sparse_div_mod", "rd_counts_mod")
    }
    conv_mod = _jit["conv_mod"]
    inv_mod = _jit["inv_mod"]
    sparse_mul_mod = _jit["sparse_mul_mod"]
    sparse_div_mod = _jit["sparse_div_mod"]
    rd_counts_mod = _jit["rd_counts_mod"]
else:
    conv_mod = _vector.conv_mod
    inv_mod = _vector.inv_mod
    sparse_mul_mod = _vector.sparse_mul_mod
    sparse_div_mod = _vector.sparse_div_mod
    rd_counts_mod = _vector.rd_counts_mod

# exact arithmetic (m=None, object arrays)
conv_exact = _vector.conv_mod
inv_exact = _vector.inv_mod
sparse_mul_exact = _vector.sparse_mul_mod
sparse_div_exact = _vector.sparse_div_mod
rd_counts_exact = _vector.rd_counts_mod

__all__ = [
    "BACKEND",
    "MAX_FAST_MODULUS",
    "conv_mod",
    "inv_mod",
    "sparse_mul_mod",
    "sparse_div_mod",
    "rd_counts_mod",
]
