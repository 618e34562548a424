"""Whole-array numpy kernels.

Same contracts as :mod:`rdcong.kernels._loops`, plus ``m=None`` meaning exact
arithmetic on object arrays of Python ints.  These serve as the fallback when
numba is disabled and as the exact-ring implementation in all cases.
"""

from __future__ import annotations

import numpy as np

_LIMB = 1 << 16


def _reduce(x, m):
    return x if m is None else x % m


def conv_mod(a, b, n, m):
    a = a[:n]
    b = b[:n]
    if len(a) == 0 or len(b) == 0:
        return _zeros(n, m)
    if m is None:
        out = np.convolve(a, b)[:n]
    elif a.dtype == object or b.dtype == object:
        out = np.convolve(a, b)[:n] % m
    elif (m - 1) * (m - 1) * min(len(a), len(b)) < (1 << 63):
        out = np.convolve(a, b)[:n] % m
    else:
        out = _conv_limbs(a, b, m)[:n]
    if len(out) < n:
        out = np.concatenate([out, _zeros(n - len(out), m)])
    return out


def _conv_limbs(a, b, m):
    a1, a0 = np.divmod(a, _LIMB)
    b1, b0 = np.divmod(b, _LIMB)
    hh = np.convolve(a1, b1) % m
    mid = (np.convolve(a1, b0) % m + np.convolve(a0, b1) % m) % m
    ll = np.convolve(a0, b0) % m
    base = _LIMB % m
    out = (hh * (base * base % m)) % m
    out = (out + mid * base) % m
    return (out + ll) % m


def _zeros(n, m):
    if m is None:
        return np.array([0] * n, dtype=object)
    return np.zeros(n, dtype=np.int64)


def inv_mod(a, n, m, inv0):
    """Reciprocal by Newton doubling: g <- g (2 - a g)."""
    g = np.array([inv0], dtype=a.dtype)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = conv_mod(a, g, prec, m)
        e = -e
        e[0] += 2
        e = _reduce(e, m)
        g = conv_mod(g, e, prec, m)
    return g[:n]


def sparse_mul_mod(s, exps, coefs, m):
    n = len(s)
    out = _zeros(n, m)
    for e, c in zip(exps, coefs):
        e = int(e)
        if e >= n or c == 0:
            continue
        out[e:] = _reduce(out[e:] + s[: n - e] * c, m)
    return out


def sparse_div_mod(s, exps, negcoefs, m):
    n = len(s)
    if m is None:
        terms = [(int(e), int(c)) for e, c in zip(exps[1:], negcoefs[1:])]
        out = [0] * n
        src = s.tolist()
        for k in range(n):
            acc = src[k]
            for e, c in terms:
                if e > k:
                    break
                acc += c * out[k - e]
            out[k] = acc
        return np.array(out, dtype=object)
    dense = np.zeros(n, dtype=np.int64)
    for e, c in zip(exps, negcoefs):
        if e < n:
            dense[e] = (m - c) % m
    return conv_mod(s, inv_mod(dense, n, m, 1), n, m)


def _stride_cumsum(c, i, m):
    # running sums along each residue class mod i
    n = len(c)
    rows = -(-n // i)
    pad = rows * i - n
    if pad:
        c = np.concatenate([c, _zeros(pad, m)])
    out = np.cumsum(c.reshape(rows, i), axis=0).reshape(-1)[:n]
    return _reduce(out, m)


def rd_counts_mod(nmax, ell, t, m):
    c = _zeros(nmax + 1, m)
    c[0] = 1 if m is None else 1 % m
    for i in range(1, nmax + 1):
        if ell > 0 and i % ell == 0:
            continue
        if t > 0 and t * i <= nmax:
            ti = t * i
            shifted = c[: nmax + 1 - ti].copy()
            c[ti:] = _reduce(c[ti:] - shifted, m)
        c = _stride_cumsum(c, i, m)
    return c
