"""Named q-series: Euler products, eta quotients, theta functions and the
dissection formulas built from them, plus the Legendre symbol."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import BadPrime, NotCoprime
from .series import (
    EXACT,
    CoefficientRing,
    TruncatedSeries,
    eq_up_to,
    invert,
    mul,
    shift,
    sparse_terms_div,
    sparse_terms_mul,
    sub,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def legendre(delta: int, p: int) -> int:
    """Legendre symbol via Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise BadPrime(f"{p} is not an odd prime")
    if delta % p == 0:
        raise NotCoprime(f"{p} divides {delta}")
    return 1 if pow(delta % p, (p - 1) // 2, p) == 1 else -1


# -- sparse building blocks ---------------------------------------------------


def _from_terms(terms: Iterable[tuple[int, int]], order: int, ring: CoefficientRing) -> TruncatedSeries:
    acc: dict[int, int] = defaultdict(int)
    for e, c in terms:
        if 0 <= e < order:
            acc[e] += c
    vals = [0] * order
    for e, c in acc.items():
        vals[e] = c
    return TruncatedSeries.from_coeffs(vals, ring)


@lru_cache(maxsize=256)
def pentagonal_terms(k: int, order: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sparse expansion of ``f_k`` below ``q^order``: sorted exponents and signs."""
    if k < 1:
        raise ValueError("f_k needs k >= 1")
    terms = {0: 1}
    n = 1
    while k * n * (3 * n - 1) // 2 < order:
        sign = -1 if n % 2 else 1
        for e in (k * n * (3 * n - 1) // 2, k * n * (3 * n + 1) // 2):
            if e < order:
                terms[e] = sign
        n += 1
    exps = tuple(sorted(terms))
    return exps, tuple(terms[e] for e in exps)


def eta_f(k: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``f_k = prod_{n>=1} (1 - q^(k n))`` from the pentagonal number theorem."""
    exps, signs = pentagonal_terms(k, order)
    return _from_terms(zip(exps, signs), order, ring)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """``prod f_k^e`` over the listed ``(k, e)`` factors; repeated ``k`` allowed."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        norm = tuple((int(k), int(e)) for k, e in self.factors)
        for k, e in norm:
            if k < 1:
                raise ValueError(f"f_{k}: index must be positive")
        object.__setattr__(self, "factors", norm)

    def combined(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for k, e in self.factors:
            out[k] += e
        return {k: e for k, e in sorted(out.items()) if e}

    def __str__(self) -> str:
        return " ".join(f"f{k}^{e}" for k, e in self.combined().items()) or "1"


def rd_spec(ell: int, t: int) -> EtaQuotientSpec:
    """Generating function ``f_t f_ell / (f_1 f_(ell t))`` of RD^(ell,t)(n)."""
    return EtaQuotientSpec(((t, 1), (ell, 1), (1, -1), (ell * t, -1)))


def eta_quotient(spec: EtaQuotientSpec | Sequence[tuple[int, int]], order: int,
                 ring: CoefficientRing = EXACT) -> TruncatedSeries:
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(tuple(spec))
    s = TruncatedSeries.one(order, ring)
    for k, e in spec.combined().items():
        exps, signs = pentagonal_terms(k, order)
        if len(exps) == 1:
            continue
        step = sparse_terms_mul if e > 0 else sparse_terms_div
        for _ in range(abs(e)):
            s = step(s, exps, signs)
    return s


def qpochhammer(r: int, s: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``(q^r; q^s)_inf`` truncated below ``q^order``."""
    if r < 1 or s < 1:
        raise ValueError("(q^r; q^s) needs r, s >= 1")
    out = TruncatedSeries.one(order, ring)
    e = r
    while e < order:
        out = sparse_terms_mul(out, (0, e), (1, -1))
        e += s
    return out


def psi(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """``psi(q) = sum_{n>=0} q^(n(n+1)/2)``."""
    terms = []
    n = 0
    while n * (n + 1) // 2 < order:
        terms.append((n * (n + 1) // 2, 1))
        n += 1
    return _from_terms(terms, order, ring)


@dataclass(frozen=True)
class ThetaSpec:
    """Ramanujan's ``f(a, b)`` with ``a = a_sign q^a_exp`` and ``b = b_sign q^b_exp``."""

    a_sign: int
    a_exp: int
    b_sign: int
    b_exp: int

    def __post_init__(self):
        if self.a_sign not in (1, -1) or self.b_sign not in (1, -1):
            raise ValueError("theta signs must be +1 or -1")
        if self.a_exp < 0 or self.b_exp < 0 or self.a_exp + self.b_exp < 1:
            raise ValueError("theta exponents must be >= 0 with a positive sum")


def theta_terms(spec: ThetaSpec, order: int) -> list[tuple[int, int]]:
    """Nonzero ``(exponent, sign)`` contributions of the bilateral sum below ``order``."""
    a, b = spec.a_exp, spec.b_exp

    def term(n):
        ta, tb = n * (n + 1) // 2, n * (n - 1) // 2
        sign = (spec.a_sign if ta % 2 else 1) * (spec.b_sign if tb % 2 else 1)
        return a * ta + b * tb, sign

    out = []
    for direction in (1, -1):
        n = 0 if direction == 1 else -1
        while True:
            e, sign = term(n)
            if e >= order:
                break
            out.append((e, sign))
            n += direction
    return out


def theta_f(spec: ThetaSpec, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    return _from_terms(theta_terms(spec, order), order, ring)


# -- dissection formulas ------------------------------------------------------

# Each variant is (numerator, denominator) as lists of (r, s) for (q^r; q^s)_inf.
FIVE_DISSECTION_VARIANTS: dict[str, tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]] = {
    "candidate": (((10, 25), (15, 25)), ((5, 25), (20, 25))),
    "reciprocal": (((5, 25), (20, 25)), ((10, 25), (15, 25))),
    "swapped": (((5, 25), (15, 25)), ((10, 25), (20, 25))),
    "as-printed": (((10, 25), (15, 25)), ((10, 20), (5, 20))),
}


def _product_quotient(num, den, order, ring):
    s = TruncatedSeries.one(order, ring)
    for r, step in num:
        s = mul(s, qpochhammer(r, step, order, ring))
    for r, step in den:
        s = mul(s, invert(qpochhammer(r, step, order, ring)))
    return s


def five_dissection_rhs(a: TruncatedSeries) -> TruncatedSeries:
    """``f_25 (a - q - q^2/a)`` at the order of ``a``."""
    n, ring = a.order, a.ring
    q = TruncatedSeries.monomial(1, n, ring)
    inner = sub(sub(a, q), shift(invert(a), 2).truncate(n))
    return mul(eta_f(25, n, ring), inner)


def check_five_dissection_variants(depth: int = 200) -> dict[str, bool]:
    """Which product readings of the factor ``a`` satisfy the 5-dissection of ``f_1``."""
    f1 = eta_f(1, depth)
    out = {}
    for name, (num, den) in FIVE_DISSECTION_VARIANTS.items():
        a = _product_quotient(num, den, depth, EXACT)
        out[name] = bool(eq_up_to(f1, five_dissection_rhs(a), depth))
    return out


@lru_cache(maxsize=None)
def resolved_five_dissection_variant(depth: int = 200) -> str:
    f1 = eta_f(1, depth)
    for name, (num, den) in FIVE_DISSECTION_VARIANTS.items():
        a = _product_quotient(num, den, depth, EXACT)
        if eq_up_to(f1, five_dissection_rhs(a), depth):
            return name
    raise RuntimeError("no product reading of the 5-dissection factor verifies")


def five_dissection_a(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """The factor ``a`` with ``f_1 = f_25 (a - q - q^2/a)``."""
    num, den = FIVE_DISSECTION_VARIANTS[resolved_five_dissection_variant()]
    return _product_quotient(num, den, order, ring)


def _require_prime(p: int, minimum: int) -> None:
    if p < minimum or not is_prime(p):
        raise BadPrime(f"{p} is not a prime >= {minimum}")


def psi_dissection_pieces(p: int) -> list[tuple[int, int, ThetaSpec | None]]:
    """Terms of the p-dissection of psi as ``(sign, q-shift, theta or None)``.

    ``None`` stands for the tail ``psi(q^(p^2))``.
    """
    if p == 2 or not is_prime(p):
        raise BadPrime(f"{p} is not an odd prime")
    pieces = []
    for k in range(0, (p - 3) // 2 + 1):
        a = (p * p + (2 * k + 1) * p) // 2
        b = (p * p - (2 * k + 1) * p) // 2
        pieces.append((1, k * (k + 1) // 2, ThetaSpec(1, a, 1, b)))
    pieces.append((1, (p * p - 1) // 8, None))
    return pieces


def psi_p_dissection_rhs(p: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    terms = []
    for sign, offset, spec in psi_dissection_pieces(p):
        if spec is None:
            n = 0
            while offset + p * p * n * (n + 1) // 2 < order:
                terms.append((offset + p * p * n * (n + 1) // 2, sign))
                n += 1
        else:
            terms.extend((offset + e, sign * c) for e, c in theta_terms(spec, order))
    return _from_terms(terms, order, ring)


def f1_excluded_index(p: int) -> int:
    """``(+-p - 1)/6``: the summation index replaced by the ``f_(p^2)`` tail."""
    return (p - 1) // 6 if p % 6 == 1 else (-p - 1) // 6


def f1_dissection_pieces(p: int) -> list[tuple[int, int, ThetaSpec | None]]:
    """Terms of the p-dissection of f_1; ``None`` stands for ``f_(p^2)``."""
    _require_prime(p, 5)
    skip = f1_excluded_index(p)
    pieces = []
    for k in range((1 - p) // 2, (p - 1) // 2 + 1):
        if k == skip:
            continue
        a = (3 * p * p + (6 * k + 1) * p) // 2
        b = (3 * p * p - (6 * k + 1) * p) // 2
        pieces.append(((-1) ** (k % 2), k * (3 * k + 1) // 2, ThetaSpec(-1, a, -1, b)))
    pieces.append(((-1) ** (skip % 2), (p * p - 1) // 24, None))
    return pieces


def f1_p_dissection_rhs(p: int, order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    terms = []
    for sign, offset, spec in f1_dissection_pieces(p):
        if spec is None:
            exps, signs = pentagonal_terms(p * p, order)
            terms.extend((offset + e, sign * c) for e, c in zip(exps, signs))
        else:
            terms.extend((offset + e, sign * c) for e, c in theta_terms(spec, order))
    return _from_terms(terms, order, ring)


def aux_a(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Coefficients a(n) of ``f_1^2``."""
    exps, signs = pentagonal_terms(1, order)
    return sparse_terms_mul(eta_f(1, order, ring), exps, signs)


def aux_b(order: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Coefficients b(n) of ``psi(q) psi(q^3)``."""
    terms = []
    n = 0
    while 3 * n * (n + 1) // 2 < order:
        terms.append(3 * n * (n + 1) // 2)
        n += 1
    return sparse_terms_mul(psi(order, ring), np.array(terms, dtype=np.int64), [1] * len(terms))


def psi_tail_residue_ok(p: int) -> bool:
    """No ``m(m+1)/2`` with ``0 <= m <= (p-3)/2`` hits ``(p^2-1)/8`` mod p.

    This is why the ``psi(q^(p^2))`` tail of the p-dissection of psi is alone
    in its residue class.
    """
    target = ((p * p - 1) // 8) % p
    return all((m * (m + 1) // 2) % p != target for m in range((p - 3) // 2 + 1))


