"""Identity entries, their verification, and the built-in catalog."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import InsufficientPrecision, ParseError
from ..reports import FAIL, INSUFFICIENT, PASS, VerificationReport
from ..series import EXACT, CoefficientRing, eq_up_to, reduce_mod
from ..special import f1_dissection_pieces, psi_dissection_pieces
from .dsl import (
    Add,
    Eta,
    Expr,
    Identity,
    Mul,
    Pow,
    Psi,
    QPow,
    Sub,
    Theta,
    identity_text,
    parse_identity,
)
from .evaluate import depth_for_terms, evaluate


@dataclass(frozen=True)
class IdentityEntry:
    """A named identity ``lhs == rhs`` or congruence ``lhs === rhs (mod m)``.

    ``min_terms`` is how many coefficients must be compared for a pass.
    """

    id: str
    lhs: Expr
    rhs: Expr
    modulus: int | None = None
    min_terms: int = 1
    params: tuple[tuple[str, int], ...] = field(default=())

    @property
    def relation(self) -> str:
        return "exact" if self.modulus is None else f"mod {self.modulus}"

    @property
    def identity(self) -> Identity:
        return Identity(self.lhs, self.rhs, self.modulus)

    @property
    def text(self) -> str:
        return identity_text(self.identity)

    @property
    def default_depth(self) -> int:
        return max(depth_for_terms(self.lhs, self.min_terms), depth_for_terms(self.rhs, self.min_terms))

    def ring(self) -> CoefficientRing:
        return EXACT if self.modulus is None else CoefficientRing.mod(self.modulus)


def entry_from_text(id: str, text: str, min_terms: int = 1, params=()) -> IdentityEntry:
    ident = parse_identity(text)
    return IdentityEntry(id, ident.lhs, ident.rhs, ident.modulus, min_terms, tuple(params))


def verify_identity(entry: IdentityEntry, depth: int | None = None, audit: bool = False) -> VerificationReport:
    """Compare both sides coefficientwise at truncation ``depth``.

    A mismatch inside the valid order is a failure whatever the depth; a clean
    comparison over fewer than ``entry.min_terms`` coefficients is reported as
    insufficient precision, never as a pass.  Congruences are evaluated in
    ``Z/m`` directly, or exactly and then reduced when ``audit`` is set.
    """
    depth = entry.default_depth if depth is None else depth
    start = time.perf_counter()
    ring = EXACT if (audit or entry.modulus is None) else entry.ring()
    try:
        lhs = evaluate(entry.lhs, depth, ring)
        rhs = evaluate(entry.rhs, depth, ring)
    except InsufficientPrecision as exc:
        return VerificationReport(entry.id, INSUFFICIENT, 0, depth, detail=str(exc),
                                  elapsed=time.perf_counter() - start)
    if audit and entry.modulus is not None:
        lhs, rhs = reduce_mod(lhs, entry.modulus), reduce_mod(rhs, entry.modulus)
    n = min(lhs.order, rhs.order)
    cmp = eq_up_to(lhs, rhs, n)
    elapsed = time.perf_counter() - start
    if not cmp:
        cex = {"index": cmp.index, "lhs": cmp.left, "rhs": cmp.right}
        return VerificationReport(entry.id, FAIL, n, depth, cex, entry.relation, elapsed)
    if n < entry.min_terms:
        return VerificationReport(entry.id, INSUFFICIENT, n, depth,
                                  detail=f"needs {entry.min_terms} terms", elapsed=elapsed)
    return VerificationReport(entry.id, PASS, n, depth, detail=entry.relation, elapsed=elapsed)


# -- parametrised families ------------------------------------------------------


def _sum_terms(terms: list[tuple[int, Expr]]) -> Expr:
    """Fold signed terms into an Add/Sub chain that starts with a positive term."""
    first = next(i for i, (sign, _) in enumerate(terms) if sign > 0)
    node = terms[first][1]
    for i, (sign, t) in enumerate(terms):
        if i != first:
            node = Add(node, t) if sign > 0 else Sub(node, t)
    return node


def _shifted(offset: int, e: Expr) -> Expr:
    return e if offset == 0 else Mul(QPow(offset), e)


def psi_dissection_entry(p: int) -> IdentityEntry:
    terms = []
    for sign, offset, spec in psi_dissection_pieces(p):
        atom = Psi(p * p) if spec is None else Theta(spec)
        terms.append((sign, _shifted(offset, atom)))
    return IdentityEntry(f"eq5[{p}]", Psi(1), _sum_terms(terms), None, 300, (("p", p),))


def f1_dissection_entry(p: int) -> IdentityEntry:
    terms = []
    for sign, offset, spec in f1_dissection_pieces(p):
        atom = Eta(p * p) if spec is None else Theta(spec)
        terms.append((sign, _shifted(offset, atom)))
    return IdentityEntry(f"eq6[{p}]", Eta(1), _sum_terms(terms), None, 300, (("p", p),))


POWER_READINGS = {
    "p^k-1": lambda p, k: p**k - 1,
    "p^(k-1)": lambda p, k: p ** (k - 1),
}
POWER_CASES = ((2, 1, 1), (2, 2, 1), (3, 1, 1), (3, 2, 1))


def power_congruence_entry(p: int, k: int, m: int = 1, reading: str | None = None) -> IdentityEntry:
    """``f_(p m)^E === f_m^(p^k) (mod p^k)`` with the exponent E of ``reading``."""
    reading = reading or resolved_power_reading()
    e = POWER_READINGS[reading](p, k)
    lhs = Pow(Eta(p * m), e) if e != 1 else Eta(p * m)
    suffix = f"[{p},{k}]" if m == 1 else f"[{p},{k},{m}]"
    return IdentityEntry(f"eq7{suffix}", lhs, Pow(Eta(m), p**k), p**k, 200,
                         (("p", p), ("k", k), ("m", m)))


def check_power_readings(terms: int = 200) -> dict[str, dict[str, bool]]:
    """Outcome of each exponent reading on each probe case ``(p, k, m)``."""
    out: dict[str, dict[str, bool]] = {}
    for reading in POWER_READINGS:
        out[reading] = {}
        for p, k, m in POWER_CASES:
            rep = verify_identity(power_congruence_entry(p, k, m, reading), depth=terms)
            out[reading][f"{p},{k},{m}"] = rep.passed
    return out


@lru_cache(maxsize=None)
def resolved_power_reading() -> str:
    results = check_power_readings()
    for reading, cases in results.items():
        if all(cases.values()):
            return reading
    raise RuntimeError(f"no exponent reading holds on all probe cases: {results}")


# -- the catalog ----------------------------------------------------------------

_RD = "RD(4,9|"

CATALOG_TEXT = f"""
# 2-dissections
eq2: f3^2/f1^2 == f4^4*f6*f12^2/(f2^5*f8*f24) + 2*q*f4*f6^2*f8*f24/(f2^4*f12) ; terms=400
eq3: f3^3/f1 == f4^3*f6^2/(f2^2*f12) + q*f12^3/f4 ; terms=400
# 5-dissection of f1
eq4: f1 == f25*(dissectA - q - q^2/dissectA) ; terms=200
# generating-function dissections for RD(4,9)
eq8: {_RD}2n+0) == f6^7*f9^7/(f3^9*f18^5) + 2*q*f6^6*f9^4/(f3^8*f18^2) + 4*q^2*f6^5*f9*f18/f3^7 ; terms=400
eq9: {_RD}6n+2) == 2*f2^6*f3^4/(f1^8*f6^2) ; terms=400
eq10: {_RD}6n+4) == 4*f2^5*f3*f6/f1^7 ; terms=400
eq11: {_RD}6n+5) == 6*f2^2*f3^2*f6^2/f1^6 ; terms=400
# modulo 4
eq12: {_RD}12n+2) === 2*f1^2 mod 4 ; terms=200
# modulo 6
eq19: {_RD}6n+2) === 2*f1^4 mod 6 ; terms=200
eq20: {_RD}30n+26) === 2*f5^4 mod 6 ; terms=200
eq21: {_RD}150n+26) === 2*f1^4 mod 6 ; terms=200
# modulo 12
eq24: {_RD}6n+4) === 4*psi*psi(q^3) mod 12 ; terms=200
# modulo 24
eq33: {_RD}6n+5) === 6*f4^4*f6^3*f12^2/(f2^5*f8*f24) + 12*q*f4*f6^4*f8*f24/(f2^4*f12) mod 24 ; terms=200
eq34: {_RD}12n+5) === 6*f2^2*f3^3*f6^2/(f1*f4*f12) mod 24 ; terms=200
eq35: {_RD}12n+11) === 12*f4*f6*f12/f2 mod 24 ; terms=200
eq36: {_RD}12n+5) === 6*f4^2*f6^4/f12^2 + 6*q*f2^2*f6^2*f12^2/f4^2 mod 24 ; terms=200
eq37: {_RD}24n+5) === 6*f2^2 mod 24 ; terms=200
eq38: {_RD}24n+17) === 6*f3^2*f6^2/f1^2 mod 24 ; terms=200
eq39: {_RD}48n+41) === 12*f4*f6*f12/f2 mod 24 ; terms=200
"""

# the cubed denominator is false (index 1 gives 3 against 1); kept as a
# negative control for the verifier
CUBED_DENOMINATOR_TEXT = "f3^3/f1^3 == f4^3*f6^2/(f2^2*f12) + q*f12^3/f4"


def parse_catalog(text: str) -> list[IdentityEntry]:
    """Read ``id: identity [; terms=N]`` lines; ``#`` starts a comment."""
    entries = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'id: identity'", lineno, 1)
        ident, body = (part.strip() for part in line.split(":", 1))
        terms = 1
        if ";" in body:
            body, opts = body.split(";", 1)
            for opt in opts.split(","):
                key, _, val = opt.partition("=")
                if key.strip() != "terms" or not val.strip().isdigit():
                    raise ParseError(f"bad option {opt.strip()!r}", lineno, 1)
                terms = int(val)
        if not ident or ident in seen:
            raise ParseError(f"missing or duplicate id {ident!r}", lineno, 1)
        seen.add(ident)
        try:
            entries.append(entry_from_text(ident, body, terms))
        except ParseError as exc:
            col = raw.find(body.strip()) + exc.column
            raise type(exc)(str(exc).split(": ", 1)[1], lineno, col) from None
    return entries


def dump_catalog(entries: list[IdentityEntry]) -> str:
    return "".join(f"{e.id}: {e.text} ; terms={e.min_terms}\n" for e in entries)


@lru_cache(maxsize=None)
def _builtin() -> tuple[IdentityEntry, ...]:
    text_entries = {e.id: e for e in parse_catalog(CATALOG_TEXT)}
    order = ["eq2", "eq3", "eq4"]
    entries = [text_entries[i] for i in order]
    entries += [psi_dissection_entry(p) for p in (3, 5, 7)]
    entries += [f1_dissection_entry(p) for p in (5, 7, 11)]
    entries += [power_congruence_entry(p, k) for p, k in ((2, 1), (2, 2), (3, 1), (3, 2), (5, 1))]
    entries += [e for i, e in text_entries.items() if i not in order]
    return tuple(entries)


def builtin_catalog() -> list[IdentityEntry]:
    return list(_builtin())


def catalog_entry(entry_id: str, entries: list[IdentityEntry] | None = None) -> IdentityEntry:
    for e in entries if entries is not None else _builtin():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


