"""Evaluate identity expressions to truncated series.

Every atom is built to the requested depth; extraction atoms (``RD``) shrink
the valid order, and the result's order is whatever survives.  Products and
quotients made only of integers, powers of q and Euler products are detected
and evaluated as a single sparse eta quotient.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from ..errors import InsufficientPrecision, NotInvertible, RDError
from ..series import (
    EXACT,
    CoefficientRing,
    TruncatedSeries,
    add,
    extract_progression,
    invert,
    mul,
    power,
    scale,
    shift,
    sub,
    substitute_power,
)
from ..special import (
    EtaQuotientSpec,
    aux_a,
    aux_b,
    eta_f,
    eta_quotient,
    five_dissection_a,
    psi,
    rd_spec,
    theta_f,
)
from .dsl import (
    RD,
    Add,
    AuxA,
    AuxB,
    DissectA,
    Div,
    Eta,
    Expr,
    Int,
    Mul,
    Pow,
    Psi,
    QPow,
    Sub,
    Theta,
    to_text,
)


@lru_cache(maxsize=16)
def rd_series(ell: int, t: int, depth: int, ring: CoefficientRing) -> TruncatedSeries:
    """Generating function of RD^(ell,t)(n) to ``depth`` terms."""
    return eta_quotient(rd_spec(ell, t), depth, ring)


def _monomial(e: Expr):
    """``(scalar, q-exponent, {k: exponent})`` if ``e`` is an eta monomial, else None."""
    if isinstance(e, Int):
        return e.value, 0, {}
    if isinstance(e, QPow):
        return 1, e.exp, {}
    if isinstance(e, Eta):
        return 1, 0, {e.k: 1}
    if isinstance(e, (Mul, Div)):
        a, b = _monomial(e.left), _monomial(e.right)
        if a is None or b is None:
            return None
        sign = 1 if isinstance(e, Mul) else -1
        if sign < 0 and b[0] not in (1, -1):
            return None
        c = a[0] * b[0]  # dividing by +-1 equals multiplying by it
        etas = defaultdict(int, a[2])
        for k, x in b[2].items():
            etas[k] += sign * x
        return c, a[1] + sign * b[1], dict(etas)
    if isinstance(e, Pow):
        a = _monomial(e.base)
        if a is None or (e.exp < 0 and a[0] not in (1, -1)):
            return None
        return a[0] ** abs(e.exp), a[1] * e.exp, {k: x * e.exp for k, x in a[2].items()}
    return None


def evaluate(expr: Expr, depth: int, ring: CoefficientRing = EXACT) -> TruncatedSeries:
    """Series value of ``expr`` with all atoms truncated at ``depth``.

    :class:`InsufficientPrecision` and :class:`NotInvertible` carry the text
    of the innermost failing subexpression in ``exc.expr``.
    """
    return _eval(expr, depth, ring)


def _eval(e: Expr, depth: int, ring: CoefficientRing) -> TruncatedSeries:
    mono = _monomial(e)
    if mono is not None and not isinstance(e, (Int, QPow, Eta)):
        c, qexp, etas = mono
        if qexp < 0:
            raise _annotate(NotInvertible(f"division by q^{-qexp}"), e)
        s = eta_quotient(EtaQuotientSpec(tuple(etas.items())), depth, ring)
        return scale(shift(s, qexp).truncate(depth), c)
    try:
        return _eval_node(e, depth, ring)
    except (InsufficientPrecision, NotInvertible) as exc:
        raise _annotate(exc, e)


def _annotate(exc: RDError, e: Expr) -> RDError:
    if getattr(exc, "expr", None) is None:
        exc.expr = to_text(e)
        exc.args = (f"{exc.args[0] if exc.args else exc} in {exc.expr}",)
    return exc


def _eval_node(e: Expr, depth: int, ring: CoefficientRing) -> TruncatedSeries:
    if isinstance(e, Int):
        return TruncatedSeries.monomial(0, depth, ring, e.value)
    if isinstance(e, QPow):
        return TruncatedSeries.monomial(e.exp, depth, ring)
    if isinstance(e, Eta):
        return eta_f(e.k, depth, ring)
    if isinstance(e, Psi):
        return substitute_power(psi(depth, ring), e.k)
    if isinstance(e, Theta):
        return theta_f(e.spec, depth, ring)
    if isinstance(e, DissectA):
        return five_dissection_a(depth, ring)
    if isinstance(e, RD):
        return extract_progression(rd_series(e.ell, e.t, depth, ring), e.m, e.r)
    if isinstance(e, AuxA):
        return aux_a(depth, ring)
    if isinstance(e, AuxB):
        return aux_b(depth, ring)
    if isinstance(e, Add):
        return add(_eval(e.left, depth, ring), _eval(e.right, depth, ring))
    if isinstance(e, Sub):
        return sub(_eval(e.left, depth, ring), _eval(e.right, depth, ring))
    if isinstance(e, Mul):
        return mul(_eval(e.left, depth, ring), _eval(e.right, depth, ring))
    if isinstance(e, Div):
        return mul(_eval(e.left, depth, ring), invert(_eval(e.right, depth, ring)))
    if isinstance(e, Pow):
        return power(_eval(e.base, depth, ring), e.exp)
    raise TypeError(f"not an expression node: {e!r}")


def valid_order(e: Expr, depth: int) -> int:
    """Order of ``evaluate(e, depth)`` without evaluating it."""
    if isinstance(e, RD):
        return max(0, -(-(depth - e.r) // e.m))
    children = [getattr(e, n) for n in ("left", "right", "base") if isinstance(getattr(e, n, None), Expr)]
    if not children:
        return depth
    return min(valid_order(c, depth) for c in children)


def depth_for_terms(e: Expr, terms: int) -> int:
    """Smallest depth at which ``e`` keeps at least ``terms`` valid coefficients."""
    if isinstance(e, RD):
        return e.m * (terms - 1) + e.r + 1
    children = [getattr(e, n) for n in ("left", "right", "base") if isinstance(getattr(e, n, None), Expr)]
    return max([terms] + [depth_for_terms(c, terms) for c in children])
