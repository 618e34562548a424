"""Truncated power series in one variable ``q``.

A :class:`TruncatedSeries` stores the coefficients of ``q^0 .. q^(N-1)`` and
represents its value only modulo ``q^N``; ``N`` is the series' *order*.  Every
operation returns the largest order its inputs justify, so precision loss
from dissections is tracked rather than silently ignored.

Coefficients live in a :class:`CoefficientRing`: exact integers (object arrays
of Python ints) or integers mod ``m`` (int64 residues, routed through the
compiled kernels when ``m < 2**31``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import BadResidue, InsufficientPrecision, NotInvertible, RingMismatch


@dataclass(frozen=True)
class CoefficientRing:
    """Either the integers (``modulus is None``) or ``Z/mZ``."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None:
            if int(self.modulus) != self.modulus or self.modulus < 2:
                raise ValueError(f"modulus must be an integer >= 2, got {self.modulus!r}")
            object.__setattr__(self, "modulus", int(self.modulus))

    @classmethod
    def exact(cls) -> CoefficientRing:
        return cls(None)

    @classmethod
    def mod(cls, m: int) -> CoefficientRing:
        return cls(m)

    @property
    def kind(self) -> str:
        return "exact" if self.modulus is None else "modular"

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    @property
    def fast(self) -> bool:
        """True when coefficients fit the int64 kernels."""
        return self.modulus is not None and self.modulus < kernels.MAX_FAST_MODULUS

    @property
    def kernel_modulus(self) -> int | None:
        return self.modulus

    def array(self, values: Iterable[int]) -> np.ndarray:
        """Build a reduced coefficient array for this ring."""
        vals = [int(v) for v in values]
        if self.modulus is None:
            out = np.empty(len(vals), dtype=object)
            out[:] = vals
            return out
        m = self.modulus
        if self.fast:
            return np.array([v % m for v in vals], dtype=np.int64)
        out = np.empty(len(vals), dtype=object)
        out[:] = [v % m for v in vals]
        return out

    def zeros(self, n: int) -> np.ndarray:
        if self.fast:
            return np.zeros(n, dtype=np.int64)
        out = np.empty(n, dtype=object)
        out[:] = [0] * n
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.modulus is None:
            return arr
        return arr % self.modulus

    def unit_inverse(self, c: int) -> int:
        """Inverse of ``c`` in the ring, or raise :class:`NotInvertible`."""
        if self.modulus is None:
            if c in (1, -1):
                return c
            raise NotInvertible(f"constant term {c} is not a unit in Z")
        try:
            return pow(int(c), -1, self.modulus)
        except ValueError:
            raise NotInvertible(f"constant term {c} is not a unit mod {self.modulus}") from None

    def __str__(self) -> str:
        return "ZZ" if self.modulus is None else f"Z/{self.modulus}"


EXACT = CoefficientRing.exact()


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Immutable dense truncated series; ``order == len(coeffs)``."""

    ring: CoefficientRing
    coeffs: np.ndarray

    def __post_init__(self):
        arr = self.coeffs
        if not isinstance(arr, np.ndarray) or arr.dtype != self._dtype():
            arr = self.ring.array(list(arr))
        elif self.ring.modulus is not None:
            arr = arr % self.ring.modulus
        else:
            arr = arr.copy()
        if arr.ndim != 1 or len(arr) < 1:
            raise ValueError("a truncated series needs order >= 1")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    def _dtype(self):
        return np.dtype(np.int64) if self.ring.fast else np.dtype(object)

    # construction helpers -------------------------------------------------
    @classmethod
    def from_coeffs(cls, values: Sequence[int], ring: CoefficientRing = EXACT, order: int | None = None):
        vals = [int(v) for v in values]
        if order is not None:
            vals = (vals + [0] * order)[:order]
        return cls(ring, ring.array(vals))

    @classmethod
    def zero(cls, order: int, ring: CoefficientRing = EXACT):
        return cls(ring, ring.zeros(order))

    @classmethod
    def one(cls, order: int, ring: CoefficientRing = EXACT):
        return cls.monomial(0, order, ring)

    @classmethod
    def monomial(cls, exponent: int, order: int, ring: CoefficientRing = EXACT, coeff: int = 1):
        if exponent < 0:
            raise ValueError("negative exponents are not power series")
        arr = ring.zeros(order)
        if exponent < order:
            arr[exponent] = coeff % ring.modulus if ring.modulus else coeff
        return cls(ring, arr)

    # basic protocol -------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return self.order

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [int(c) for c in self.coeffs[k]]
        if k < 0 or k >= self.order:
            raise InsufficientPrecision(f"coefficient {k} outside valid order {self.order}")
        return int(self.coeffs[k])

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise InsufficientPrecision(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.ring, self.coeffs[:order])

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.order == other.order and self.tolist() == other.tolist()

    __hash__ = None

    def __repr__(self) -> str:
        head = self.tolist()[:8]
        more = ", ..." if self.order > 8 else ""
        return f"TruncatedSeries({self.ring}, order={self.order}, [{', '.join(map(str, head))}{more}])"

    # operator sugar -------------------------------------------------------
    def __add__(self, other):
        return add(self, _coerce(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other, self))

    def __rsub__(self, other):
        return sub(_coerce(other, self), self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return scale(self, int(other))
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return mul(self, invert(_coerce(other, self)))

    def __pow__(self, e: int):
        return power(self, e)


def _coerce(x, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, (int, np.integer)):
        return TruncatedSeries.monomial(0, like.order, like.ring, int(x))
    raise TypeError(f"cannot combine {type(x).__name__} with a series")


def _same_ring(s1: TruncatedSeries, s2: TruncatedSeries) -> CoefficientRing:
    if s1.ring != s2.ring:
        raise RingMismatch(f"{s1.ring} vs {s2.ring}")
    return s1.ring


def _wrap(ring: CoefficientRing, arr: np.ndarray) -> TruncatedSeries:
    return TruncatedSeries(ring, arr)


def add(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    ring = _same_ring(s1, s2)
    n = min(s1.order, s2.order)
    return _wrap(ring, ring.reduce(s1.coeffs[:n] + s2.coeffs[:n]))


def neg(s: TruncatedSeries) -> TruncatedSeries:
    return _wrap(s.ring, s.ring.reduce(-s.coeffs))


def sub(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    return add(s1, neg(s2))


def scale(s: TruncatedSeries, c: int) -> TruncatedSeries:
    ring = s.ring
    if ring.fast:
        c %= ring.modulus
    return _wrap(ring, ring.reduce(s.coeffs * c))


def mul(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    """Truncated Cauchy product; order is the smaller input order."""
    ring = _same_ring(s1, s2)
    n = min(s1.order, s2.order)
    a, b = s1.coeffs[:n], s2.coeffs[:n]
    if ring.fast:
        out = kernels.conv_mod(a, b, n, ring.modulus)
    else:
        out = ring.reduce(kernels.conv_exact(a, b, n, None))
    return _wrap(ring, out)


def invert(s: TruncatedSeries) -> TruncatedSeries:
    ring = s.ring
    inv0 = ring.unit_inverse(int(s.coeffs[0]))
    n = s.order
    if ring.fast:
        out = kernels.inv_mod(s.coeffs, n, ring.modulus, inv0)
    else:
        out = kernels.inv_exact(s.coeffs, n, ring.modulus, inv0)
    return _wrap(ring, out)


def power(s: TruncatedSeries, e: int) -> TruncatedSeries:
    """``s**e`` by repeated squaring; negative ``e`` inverts first."""
    if e < 0:
        s = invert(s)
        e = -e
    result = TruncatedSeries.one(s.order, s.ring)
    base = s
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def substitute_power(s: TruncatedSeries, k: int) -> TruncatedSeries:
    """``s(q^k)``, kept at the input order."""
    if k < 1:
        raise ValueError("substitution power must be >= 1")
    n = s.order
    out = s.ring.zeros(n)
    m = (n - 1) // k + 1
    out[: k * m : k] = s.coeffs[:m]
    return _wrap(s.ring, out)


def shift(s: TruncatedSeries, j: int) -> TruncatedSeries:
    """Multiply by ``q^j``; the result is valid to ``s.order + j``."""
    if j < 0:
        raise ValueError("negative exponents are not power series")
    out = s.ring.zeros(s.order + j)
    out[j:] = s.coeffs
    return _wrap(s.ring, out)


def extract_progression(s: TruncatedSeries, m: int, r: int) -> TruncatedSeries:
    """Series whose n-th coefficient is the ``(m n + r)``-th coefficient of ``s``."""
    if m < 1:
        raise ValueError("progression modulus must be >= 1")
    if r < 0 or r >= m:
        raise BadResidue(f"residue {r} not in [0, {m})")
    if s.order <= r:
        raise InsufficientPrecision(f"order {s.order} leaves no terms of the form {m}n+{r}")
    return _wrap(s.ring, s.coeffs[r::m].copy())


def reduce_mod(s: TruncatedSeries, m: int) -> TruncatedSeries:
    if not s.ring.is_exact:
        raise RingMismatch(f"series is already over {s.ring}")
    ring = CoefficientRing.mod(m)
    return TruncatedSeries(ring, ring.array(s.coeffs))


@dataclass(frozen=True)
class Comparison:
    """Outcome of :func:`eq_up_to`; truthy iff the prefixes agree."""

    equal: bool
    n: int
    index: int | None = None
    left: int | None = None
    right: int | None = None

    def __bool__(self) -> bool:
        return self.equal


def eq_up_to(s1: TruncatedSeries, s2: TruncatedSeries, n: int) -> Comparison:
    """Compare coefficients of ``q^0 .. q^(n-1)``."""
    _same_ring(s1, s2)
    if n > s1.order or n > s2.order:
        raise InsufficientPrecision(f"asked for {n} terms, valid orders are {s1.order} and {s2.order}")
    a, b = s1.coeffs[:n], s2.coeffs[:n]
    diff = np.nonzero(a != b)[0]
    if len(diff) == 0:
        return Comparison(True, n)
    k = int(diff[0])
    return Comparison(False, n, k, int(a[k]), int(b[k]))


def sparse_terms_mul(s: TruncatedSeries, exps: np.ndarray, coefs: Sequence[int]) -> TruncatedSeries:
    """Multiply by the sparse series ``sum coefs[i] q^exps[i]``."""
    ring = s.ring
    if ring.fast:
        c = np.array([int(v) % ring.modulus for v in coefs], dtype=np.int64)
        out = kernels.sparse_mul_mod(s.coeffs, np.asarray(exps, dtype=np.int64), c, ring.modulus)
    else:
        c = [int(v) for v in coefs]
        out = ring.reduce(kernels.sparse_mul_exact(s.coeffs, list(exps), c, None))
    return _wrap(ring, out)


def sparse_terms_div(s: TruncatedSeries, exps: np.ndarray, coefs: Sequence[int]) -> TruncatedSeries:
    """Divide by a sparse series with constant term 1 (``exps[0] == 0``)."""
    if len(exps) == 0 or exps[0] != 0 or int(coefs[0]) != 1:
        raise NotInvertible("sparse divisor must start with constant term 1")
    ring = s.ring
    if ring.fast:
        m = ring.modulus
        neg_c = np.array([(-int(v)) % m for v in coefs], dtype=np.int64)
        out = kernels.sparse_div_mod(s.coeffs, np.asarray(exps, dtype=np.int64), neg_c, m)
    elif ring.is_exact:
        out = kernels.sparse_div_exact(s.coeffs, list(exps), [-int(v) for v in coefs], None)
    else:
        m = ring.modulus
        terms = [(int(e), (-int(c)) % m) for e, c in zip(exps[1:], coefs[1:])]
        src = s.tolist()
        res = [0] * len(src)
        for k in range(len(src)):
            acc = src[k]
            for e, c in terms:
                if e > k:
                    break
                acc += c * res[k - e]
            res[k] = acc % m
        out = ring.array(res)
    return _wrap(ring, out)
