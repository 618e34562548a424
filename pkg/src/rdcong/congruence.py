"""Congruence claims ``c(A n + B) = 0 (mod M)`` and their finite-range checks.

Claims about RD^(ell,t) are checked against the partition DP of
:mod:`rdcong.partitions`, never against the generating function, so a wrong
identity and a wrong claim cannot hide each other.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .errors import BadPrime, InvalidClaim, NotCoprime, RingMismatch
from .partitions import CountTable, PartitionConstraint, count_partitions
from .reports import FAIL, INSUFFICIENT, PASS, VerificationReport
from .series import EXACT, CoefficientRing
from .special import aux_a, aux_b, eta_quotient, is_prime, legendre, rd_spec

DEFAULT_ARGUMENT_BOUND = 100_000
ORACLE_MODULUS = 24  # lcm of every modulus in the theorems


@dataclass(frozen=True)
class CongruenceClaim:
    """``coefficient(A n + B) = 0 (mod M)`` for all ``n >= 0``."""

    A: int
    B: int
    M: int
    provenance: str = ""
    source: str = "RD"
    ell: int = 4
    t: int = 9

    def __post_init__(self):
        if self.A < 1 or self.B < 0:
            raise InvalidClaim(f"need A >= 1 and B >= 0, got A={self.A}, B={self.B}")
        if self.M < 2:
            raise InvalidClaim(f"modulus must be >= 2, got {self.M}")
        if self.source not in ("RD", "auxA", "auxB"):
            raise InvalidClaim(f"unknown coefficient source {self.source!r}")

    def argument(self, n: int) -> int:
        return self.A * n + self.B

    def max_n(self, bound: int) -> int:
        """Largest ``n`` whose argument does not exceed ``bound`` (-1 if none)."""
        return (bound - self.B) // self.A if bound >= self.B else -1

    @property
    def id(self) -> str:
        return self.provenance or f"{self.source}({self.A}n+{self.B}) mod {self.M}"


# -- coefficient tables ---------------------------------------------------------

_oracle_cache: dict[tuple, CountTable] = {}


def _slice(table: CountTable, nmax: int) -> CountTable:
    if table.nmax == nmax:
        return table
    return CountTable(table.label, table.ring, table.counts[: nmax + 1].copy(), table.constraint)


def oracle_table(ell: int, t: int, nmax: int, ring: CoefficientRing = CoefficientRing.mod(ORACLE_MODULUS)) -> CountTable:
    """DP counts of RD^(ell,t)(0..nmax), reusing any larger table already built."""
    key = (ell, t, ring)
    cached = _oracle_cache.get(key)
    if cached is None or cached.nmax < nmax:
        cached = count_partitions(PartitionConstraint(ell, t), nmax, ring)
        _oracle_cache[key] = cached
    return _slice(cached, nmax)


def series_table(ell: int, t: int, nmax: int, ring: CoefficientRing = CoefficientRing.mod(ORACLE_MODULUS)) -> CountTable:
    """The same counts read off the eta-quotient generating function."""
    s = eta_quotient(rd_spec(ell, t), nmax + 1, ring)
    return CountTable(f"series RD({ell},{t})", ring, s.coeffs.copy(), PartitionConstraint(ell, t))


@lru_cache(maxsize=8)
def _aux_series(source: str, order: int):
    return (aux_a if source == "auxA" else aux_b)(order, EXACT)


def aux_table(source: str, nmax: int) -> CountTable:
    """Exact coefficients a(n) of f_1^2 (``auxA``) or b(n) of psi(q)psi(q^3) (``auxB``)."""
    if source not in ("auxA", "auxB"):
        raise ValueError(f"unknown auxiliary series {source!r}")
    s = _aux_series(source, nmax + 1)
    return CountTable(source, EXACT, s.coeffs.copy())


# -- checking -------------------------------------------------------------------


def _first_nonzero(values: np.ndarray, M: int) -> int | None:
    residues = np.array([int(v) % M for v in values]) if values.dtype == object else values % M
    bad = np.nonzero(residues)[0]
    return int(bad[0]) if len(bad) else None


def check_claim(claim: CongruenceClaim, n_max: int, table: CountTable) -> VerificationReport:
    """Check ``0 <= n <= n_max`` against a table of coefficients."""
    start = time.perf_counter()
    if table.ring.modulus is not None and table.ring.modulus % claim.M:
        raise RingMismatch(f"table over {table.ring} cannot decide residues mod {claim.M}")
    need = claim.argument(n_max)
    if need > table.nmax:
        return VerificationReport(claim.id, INSUFFICIENT, 0, table.nmax,
                                  detail=f"argument {need} beyond table size {table.nmax}",
                                  elapsed=time.perf_counter() - start)
    values = table.counts[claim.B : need + 1 : claim.A]
    bad = _first_nonzero(values, claim.M)
    elapsed = time.perf_counter() - start
    detail = f"{claim.source}({claim.A}n+{claim.B}) mod {claim.M}"
    if bad is not None:
        cex = {"n": bad, "argument": claim.argument(bad), "value": int(values[bad]) % claim.M}
        return VerificationReport(claim.id, FAIL, n_max + 1, table.nmax, cex, detail, elapsed)
    return VerificationReport(claim.id, PASS, n_max + 1, table.nmax, detail=detail, elapsed=elapsed)


def check_claims(claims: list[CongruenceClaim], n_max: int | None = None,
                 bound: int = DEFAULT_ARGUMENT_BOUND) -> list[VerificationReport]:
    """Check RD claims against one shared oracle table.

    With ``n_max=None`` each claim is checked for every ``n`` whose argument
    stays within ``bound``.
    """
    ranges = [c.max_n(bound) if n_max is None else n_max for c in claims]
    size = max(c.argument(n) for c, n in zip(claims, ranges))
    reports = []
    for c, n in zip(claims, ranges):
        if c.source != "RD":
            table = aux_table(c.source, size)
        else:
            modulus = math.lcm(ORACLE_MODULUS, c.M)
            table = oracle_table(c.ell, c.t, size, CoefficientRing.mod(modulus))
        reports.append(check_claim(c, n, table))
    return reports


# -- claim families -------------------------------------------------------------

LEMMA11 = ((4, 3, 3), (6, 2, 2), (6, 3, 3), (6, 4, 4), (6, 5, 6), (6, 7, 12), (8, 5, 6))


def claims_lemma11() -> list[CongruenceClaim]:
    return [CongruenceClaim(A, B, M, f"lemma1.1[{A}n+{B} mod {M}]") for A, B, M in LEMMA11]


def _odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise BadPrime(f"{p} is not an odd prime")


def _residue_symbol(delta: int, p: int) -> int:
    _odd_prime(p)
    try:
        return legendre(delta, p)
    except NotCoprime:
        raise BadPrime(f"{p} divides {delta}") from None


def claims_thm31(p: int, alpha: int) -> list[CongruenceClaim]:
    """RD(12 p^(2a+1) (p n + i) + p^(2a+2) + 1) = 0 (mod 4) for p = 3 (mod 4)."""
    if _residue_symbol(-1, p) != -1:
        raise BadPrime(f"{p} is not 3 mod 4")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    lo, hi = p ** (2 * alpha + 1), p ** (2 * alpha + 2)
    return [CongruenceClaim(12 * hi, 12 * lo * i + hi + 1, 4, f"thm3.1[p={p},alpha={alpha},i={i}]")
            for i in range(1, p)]


def claims_thm41(alpha: int) -> list[CongruenceClaim]:
    """RD(6 5^(2a+2) n + 6 5^(2a+1) i + 5^(2a+2) + 1) = 0 (mod 6), i = 1..4."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    lo, hi = 5 ** (2 * alpha + 1), 5 ** (2 * alpha + 2)
    return [CongruenceClaim(6 * hi, 6 * lo * i + hi + 1, 6, f"thm4.1[alpha={alpha},i={i}]")
            for i in range(1, 5)]


def claims_thm51(p: int, alpha: int) -> list[CongruenceClaim]:
    """RD(6 p^(2a+1) (p n + i) + 3 p^(2a+2) + 1) = 0 (mod 12) for p = 5 (mod 6)."""
    if _residue_symbol(-3, p) != -1:
        raise BadPrime(f"{p} is not 5 mod 6")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    lo, hi = p ** (2 * alpha + 1), p ** (2 * alpha + 2)
    return [CongruenceClaim(6 * hi, 6 * lo * i + 3 * hi + 1, 12, f"thm5.1[p={p},alpha={alpha},i={i}]")
            for i in range(1, p)]


def claims_thm61() -> list[CongruenceClaim]:
    return [CongruenceClaim(A, B, 24, f"thm6.1[{A}n+{B} mod 24]") for A, B in ((24, 23), (48, 29), (96, 89))]


# -- auxiliary series -------------------------------------------------------------


def _aux_offset(source: str, p: int, power: int) -> int:
    """``(P - 1)/12`` for auxA, ``(P - 1)/2`` for auxB, with ``P = p^power``."""
    P = p**power
    if source == "auxA":
        if (P - 1) % 12:
            raise BadPrime(f"({p}^{power} - 1)/12 is not an integer")
        return (P - 1) // 12
    if source == "auxB":
        return (P - 1) // 2
    raise ValueError(f"unknown auxiliary series {source!r}")


def _aux_prime(source: str, p: int) -> None:
    if source == "auxA":
        if _residue_symbol(-1, p) != -1:
            raise BadPrime(f"{p} is not 3 mod 4")
        _aux_offset(source, p, 2)
    elif source == "auxB":
        if _residue_symbol(-3, p) != -1:
            raise BadPrime(f"{p} is not 5 mod 6")
    else:
        raise ValueError(f"unknown auxiliary series {source!r}")


def check_vanishing_family(source: str, p: int, n_max: int) -> VerificationReport:
    """``c(p^2 n + p i + offset) = 0`` exactly for ``1 <= i <= p-1``, ``n <= n_max``."""
    _aux_prime(source, p)
    start = time.perf_counter()
    off = _aux_offset(source, p, 2)
    size = p * p * n_max + p * (p - 1) + off
    table = aux_table(source, size)
    label = "eq16" if source == "auxA" else "eq28"
    for i in range(1, p):
        B = p * i + off
        values = table.counts[B : p * p * n_max + B + 1 : p * p]
        bad = next((k for k, v in enumerate(values) if v != 0), None)
        if bad is not None:
            cex = {"n": bad, "i": i, "argument": p * p * bad + B, "value": int(values[bad])}
            return VerificationReport(f"{label}[{source},p={p}]", FAIL, n_max + 1, table.nmax, cex,
                                      elapsed=time.perf_counter() - start)
    return VerificationReport(f"{label}[{source},p={p}]", PASS, n_max + 1, table.nmax,
                              detail=f"{p - 1} progressions", elapsed=time.perf_counter() - start)


def check_self_similarity(source: str, p: int, alpha: int, n_max: int) -> VerificationReport:
    """``c(p^(2 alpha) n + offset) = c(n)`` exactly for ``n <= n_max``."""
    _aux_prime(source, p)
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    start = time.perf_counter()
    P = p ** (2 * alpha)
    off = _aux_offset(source, p, 2 * alpha)
    table = aux_table(source, P * n_max + off)
    label = "eq17" if source == "auxA" else "eq29"
    rid = f"{label}[{source},p={p},alpha={alpha}]"
    lhs = table.counts[off : P * n_max + off + 1 : P]
    rhs = table.counts[: n_max + 1]
    for n, (x, y) in enumerate(zip(lhs, rhs)):
        if x != y:
            cex = {"n": n, "argument": P * n + off, "lhs": int(x), "rhs": int(y)}
            return VerificationReport(rid, FAIL, n_max + 1, table.nmax, cex, elapsed=time.perf_counter() - start)
    return VerificationReport(rid, PASS, n_max + 1, table.nmax, elapsed=time.perf_counter() - start)


# -- discovery ------------------------------------------------------------------


def _implies(y: tuple[int, int, int], x: tuple[int, int, int]) -> bool:
    """Whether claim ``y`` = (A', B', M') already forces claim ``x`` = (A, B, M)."""
    A1, B1, M1 = y
    A, B, M = x
    return A % A1 == 0 and B >= B1 and (B - B1) % A1 == 0 and M1 % M == 0


def _suppresses(y: tuple[int, int, int], x: tuple[int, int, int]) -> bool:
    # a claim with B' >= A' fails at n = -1, so it only hides other such claims
    # and never a progression with a reduced residue
    return y != x and (y[1] < y[0] or x[1] >= x[0]) and _implies(y, x)


def scan_congruences(ell: int, t: int, A_max: int, M_set, n_min_evidence: int = 50,
                     b_span: int = 2) -> list[tuple[int, int, int]]:
    """Progressions ``A n + B`` (``A <= A_max``, ``B < b_span * A``) on which
    RD^(ell,t) vanishes mod ``M`` for every ``n <= n_min_evidence``.

    A claim implied by another found claim is dropped, except that a claim
    with ``B' >= A'`` never hides one with ``B < A``.  ``n_min_evidence = 0``
    degenerates to testing one coefficient per progression.
    """
    if A_max > 200:
        raise ValueError("A_max is limited to 200")
    moduli = sorted(set(int(m) for m in M_set))
    if not moduli or moduli[0] < 2:
        raise ValueError("moduli must be >= 2")
    modulus = reduce(math.lcm, moduli)
    size = A_max * n_min_evidence + b_span * A_max
    table = oracle_table(ell, t, size, CoefficientRing.mod(modulus))
    found = []
    for A in range(1, A_max + 1):
        for B in range(b_span * A):
            values = table.counts[B : B + A * n_min_evidence + 1 : A]
            for M in moduli:
                if not np.any(values % M):
                    found.append((A, B, M))
    kept = [x for x in found if not any(_suppresses(y, x) for y in found)]
    return sorted(kept)
