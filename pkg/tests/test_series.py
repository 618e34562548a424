from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from rdcong.errors import BadResidue, InsufficientPrecision, NotInvertible, RingMismatch
from rdcong.series import (
    EXACT,
    CoefficientRing,
    TruncatedSeries,
    add,
    eq_up_to,
    extract_progression,
    invert,
    mul,
    power,
    reduce_mod,
    scale,
    shift,
    substitute_power,
)
from rdcong.special import eta_f

S = TruncatedSeries.from_coeffs


def geometric(n, ring=EXACT):
    return S([1] * n, ring)


# -- worked examples --------------------------------------------------------------


def test_add_examples():
    assert (S([1, 1]) + S([1, -1])).tolist() == [2, 0]
    s = S([3, 1, 4, 1, 5])
    assert s + TruncatedSeries.zero(5) == s
    m3 = CoefficientRing.mod(3)
    assert (S([2, 1], m3) + S([2, 2], m3)).tolist() == [1, 0]


def test_add_rejects_mixed_rings():
    with pytest.raises(RingMismatch):
        add(S([1, 1]), S([1, 1], CoefficientRing.mod(5)))


def test_mul_examples():
    assert mul(S([1, -1, 0]), S([1, 1, 0])).tolist() == [1, 0, -1]
    s = S([2, 7, 1, 8])
    assert s * TruncatedSeries.one(4) == s
    assert mul(geometric(6), geometric(6)).tolist() == [1, 2, 3, 4, 5, 6]


def test_invert_examples():
    assert invert(S([1, -1, 0, 0, 0])).tolist() == [1] * 5
    assert invert(TruncatedSeries.one(3)).tolist() == [1, 0, 0]
    assert invert(eta_f(1, 8)).tolist() == [1, 1, 2, 3, 5, 7, 11, 15]


def test_invert_needs_unit_constant():
    with pytest.raises(NotInvertible):
        invert(S([2, 1]))
    with pytest.raises(NotInvertible):
        invert(S([0, 1]))
    with pytest.raises(NotInvertible):
        invert(S([3, 1], CoefficientRing.mod(6)))
    # 5 is a unit mod 6
    inv = invert(S([5, 1], CoefficientRing.mod(6)))
    assert mul(inv, S([5, 1], CoefficientRing.mod(6))).tolist() == [1, 0]


def test_power_examples():
    assert power(S([1, 1, 0, 0]), 2).tolist() == [1, 2, 1, 0]
    assert power(S([5, 3, 1]), 0).tolist() == [1, 0, 0]
    assert power(S([1, -1, 0, 0, 0]), -1).tolist() == [1] * 5


def test_substitute_power_examples():
    assert substitute_power(S([1, 1, 0, 0]), 2).tolist() == [1, 0, 1, 0]
    s = S([4, 5, 6])
    assert substitute_power(s, 1) == s
    direct = [1] + [0] * 29
    for n in range(3, 30, 3):  # prod (1 - q^(3n)) by repeated multiplication
        factor = [1] + [0] * 29
        factor[n] = -1
        direct = mul(S(direct), S(factor)).tolist()
    assert substitute_power(eta_f(1, 30), 3).tolist() == direct


def test_extract_progression_examples():
    s = S(range(20))
    assert extract_progression(s, 2, 1).tolist() == [2 * n + 1 for n in range(10)]
    assert extract_progression(s, 1, 0) == s
    pentagonal = {k * (3 * k + 1) // 2 for k in range(-200, 201)}
    assert all(e % 5 != 3 for e in pentagonal)
    assert not any(extract_progression(eta_f(1, 500), 5, 3).tolist())


def test_extract_progression_errors():
    with pytest.raises(BadResidue):
        extract_progression(S([1, 2, 3]), 2, 2)
    with pytest.raises(InsufficientPrecision):
        extract_progression(S([1, 2, 3]), 5, 4)


def test_reduce_mod_examples():
    assert reduce_mod(S([2, -3]), 3).tolist() == [2, 0]
    assert reduce_mod(TruncatedSeries.zero(4), 7).tolist() == [0] * 4
    f1sq = power(eta_f(1, 6), 2)
    assert f1sq.tolist() == [1, -2, -1, 2, 1, 2]
    assert reduce_mod(f1sq, 4).tolist() == [1, 2, 3, 2, 1, 2]
    with pytest.raises(RingMismatch):
        reduce_mod(reduce_mod(f1sq, 4), 2)


def test_eq_up_to_examples():
    s = S([1, 2, 3])
    assert eq_up_to(s, s, 3)
    one = TruncatedSeries.one(10)
    bumped = one + TruncatedSeries.monomial(5, 10)
    assert eq_up_to(one, bumped, 5)
    cmp = eq_up_to(one, bumped, 6)
    assert not cmp and cmp.index == 5 and (cmp.left, cmp.right) == (0, 1)
    f = eta_f(1, 100)
    assert eq_up_to(f * invert(f), TruncatedSeries.one(100), 100)
    with pytest.raises(InsufficientPrecision):
        eq_up_to(s, s, 4)


def test_coefficient_access_beyond_order_is_an_error():
    with pytest.raises(InsufficientPrecision):
        S([1, 2])[2]
    with pytest.raises(InsufficientPrecision):
        S([1, 2]).truncate(3)


def test_shift_extends_order():
    s = shift(S([1, 2]), 3)
    assert s.order == 5 and s.tolist() == [0, 0, 0, 1, 2]


def test_series_are_read_only():
    s = S([1, 2, 3])
    with pytest.raises(ValueError):
        s.coeffs[0] = 5


def test_large_modulus_uses_exact_storage():
    big = CoefficientRing.mod((1 << 61) - 1)
    a = S([1, (1 << 60), 3], big)
    b = S([1, (1 << 60), 5], big)
    expect = reduce_mod(mul(S([1, 1 << 60, 3]), S([1, 1 << 60, 5])), (1 << 61) - 1)
    assert mul(a, b).tolist() == expect.tolist()


# -- ring axioms ----------------------------------------------------------------

ORDERS = st.integers(min_value=1, max_value=64)
RINGS = st.sampled_from([None, 2, 3, 4, 24, 97, (1 << 31) + 11])


@st.composite
def series_triples(draw):
    n = draw(ORDERS)
    m = draw(RINGS)
    ring = EXACT if m is None else CoefficientRing.mod(m)
    coeff = st.integers(min_value=-50, max_value=50)
    make = lambda: S(draw(st.lists(coeff, min_size=n, max_size=n)), ring)
    return make(), make(), make()


@settings(max_examples=150, deadline=None)
@given(series_triples())
def test_ring_axioms(abc):
    a, b, c = abc
    zero = TruncatedSeries.zero(a.order, a.ring)
    one = TruncatedSeries.one(a.order, a.ring)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + zero == a
    assert a + (-a) == zero
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * one == a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=120, deadline=None)
@given(series_triples())
def test_inverse_is_two_sided(abc):
    a, _, _ = abc
    unit = a + TruncatedSeries.one(a.order, a.ring) * (1 - a[0])
    inv = invert(unit)
    assert unit * inv == TruncatedSeries.one(a.order, a.ring)
    assert power(unit, -2) == inv * inv


@settings(max_examples=120, deadline=None)
@given(series_triples(), st.integers(min_value=1, max_value=7))
def test_dissection_completeness(abc, m):
    """Interleaving the m progressions of s gives s back."""
    s = abc[0]
    parts = [extract_progression(s, m, r) if r < s.order else None for r in range(m)]
    rebuilt = [0] * s.order
    for r, part in enumerate(parts):
        if part is not None:
            for n, c in enumerate(part.tolist()):
                rebuilt[m * n + r] = c
    assert rebuilt == s.tolist()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-99, 99), min_size=1, max_size=64), st.integers(min_value=1, max_value=6))
def test_dissection_completeness_by_substitution(values, m):
    """sum_r q^r * (progression r)(q^m) rebuilds s, computed with series operations."""
    s = S(values)
    total = TruncatedSeries.zero(s.order)
    for r in range(min(m, s.order)):
        part = extract_progression(s, m, r)
        padded = S(part.tolist(), order=s.order)
        total = total + shift(substitute_power(padded, m), r).truncate(s.order)
    assert total == s


@settings(max_examples=120, deadline=None)
@given(series_triples(), st.integers(min_value=1, max_value=5),
       st.integers(min_value=-9, max_value=9), st.integers(min_value=-9, max_value=9))
def test_extraction_is_linear(abc, m, x, y):
    a, b, _ = abc
    r = 0
    lhs = extract_progression(scale(a, x) + scale(b, y), m, r)
    rhs = scale(extract_progression(a, m, r), x) + scale(extract_progression(b, m, r), y)
    assert lhs == rhs


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=1, max_value=64), st.data(), st.sampled_from([2, 3, 4, 12, 24, 1009]))
def test_reduce_mod_is_a_ring_homomorphism(n, data, m):
    coeff = st.integers(min_value=-10**6, max_value=10**6)
    a = S(data.draw(st.lists(coeff, min_size=n, max_size=n)))
    b = S(data.draw(st.lists(coeff, min_size=n, max_size=n)))
    assert reduce_mod(a + b, m) == reduce_mod(a, m) + reduce_mod(b, m)
    assert reduce_mod(a * b, m) == reduce_mod(a, m) * reduce_mod(b, m)
