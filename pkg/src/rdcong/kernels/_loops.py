"""Scalar-loop kernels over int64 residues.

Written in the subset of Python that numba compiles in nopython mode; the
package wraps them with ``njit`` when numba is usable.  Every function takes
its modulus explicitly and expects inputs already reduced into ``[0, m)``
with ``m < 2**31``, so a single product fits in 62 bits.
"""

import numpy as np

# Accumulators are folded back below this bound before the next product lands.
_FOLD = 1 << 62


def conv_mod(a, b, n, m):
    out = np.zeros(n, dtype=np.int64)
    la = min(a.shape[0], n)
    lb = min(b.shape[0], n)
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        lim = min(lb, n - i)
        for j in range(lim):
            v = out[i + j] + ai * b[j]
            if v >= _FOLD:
                v %= m
            out[i + j] = v
    for k in range(n):
        out[k] %= m
    return out


def inv_mod(a, n, m, inv0):
    out = np.zeros(n, dtype=np.int64)
    if n == 0:
        return out
    out[0] = inv0
    la = a.shape[0]
    for k in range(1, n):
        acc = 0
        lim = min(k, la - 1)
        for i in range(1, lim + 1):
            acc += a[i] * out[k - i]
            if acc >= _FOLD:
                acc %= m
        acc %= m
        out[k] = ((m - acc) * inv0) % m
    return out


def sparse_mul_mod(s, exps, coefs, m):
    n = s.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for t in range(exps.shape[0]):
        e = exps[t]
        c = coefs[t]
        if e >= n or c == 0:
            continue
        for j in range(n - e):
            out[j + e] = (out[j + e] + c * s[j]) % m
    return out


def sparse_div_mod(s, exps, negcoefs, m):
    """Divide by a sparse series with constant term 1.

    ``exps`` is sorted ascending with ``exps[0] == 0``; ``negcoefs[t]`` holds
    the residue of minus the coefficient at ``exps[t]``.
    """
    n = s.shape[0]
    out = np.zeros(n, dtype=np.int64)
    nt = exps.shape[0]
    for k in range(n):
        acc = s[k]
        for t in range(1, nt):
            e = exps[t]
            if e > k:
                break
            acc += negcoefs[t] * out[k - e]
            if acc >= _FOLD:
                acc %= m
        out[k] = acc % m
    return out


def rd_counts_mod(nmax, ell, t, m):
    """Counts of partitions with parts not divisible by ``ell`` (0: no
    restriction) and multiplicities below ``t`` (0: unbounded), mod ``m``."""
    c = np.zeros(nmax + 1, dtype=np.int64)
    c[0] = 1 % m
    for i in range(1, nmax + 1):
        if ell > 0 and i % ell == 0:
            continue
        if t > 0:
            ti = t * i
            # multiply by 1 - q^(t*i); descending keeps c[n - ti] unmodified
            for n in range(nmax, ti - 1, -1):
                v = c[n] - c[n - ti]
                if v < 0:
                    v += m
                c[n] = v
        # divide by 1 - q^i
        for n in range(i, nmax + 1):
            v = c[n] + c[n - i]
            if v >= m:
                v -= m
            c[n] = v
    return c
