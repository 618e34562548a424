from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from rdcong.errors import ParseError, UnknownSymbol
from rdcong.identity import (
    builtin_catalog,
    catalog_entry,
    dump_catalog,
    entry_from_text,
    evaluate,
    parse_catalog,
    parse_expr,
    parse_identity,
    to_text,
    verify_identity,
)
from rdcong.identity.catalog import (
    CUBED_DENOMINATOR_TEXT,
    check_power_readings,
    power_congruence_entry,
    resolved_power_reading,
)
from rdcong.identity.dsl import (
    RD,
    Add,
    AuxA,
    AuxB,
    DissectA,
    Div,
    Eta,
    Identity,
    Int,
    Mul,
    Pow,
    Psi,
    QPow,
    Sub,
    Theta,
    identity_text,
)
from rdcong.identity.evaluate import valid_order
from rdcong.reports import FAIL, INSUFFICIENT, PASS
from rdcong.series import CoefficientRing, TruncatedSeries
from rdcong.special import ThetaSpec, aux_a


# -- parsing ---------------------------------------------------------------------


def test_parse_two_dissection():
    ident = parse_identity("f3^3/f1^3 == f4^3*f6^2/(f2^2*f12) + q*f12^3/f4")
    assert ident.modulus is None
    assert ident.lhs == Div(Pow(Eta(3), 3), Pow(Eta(1), 3))
    assert isinstance(ident.rhs, Add)
    assert ident.rhs.right == Div(Mul(QPow(1), Pow(Eta(12), 3)), Eta(4))


def test_parse_trivial_and_congruence():
    assert parse_identity("f1 == f1") == Identity(Eta(1), Eta(1))
    ident = parse_identity("RD(4,9|6n+2) === 2*f1^4 mod 6")
    assert ident == Identity(RD(4, 9, 6, 2), Mul(Int(2), Pow(Eta(1), 4)), 6)


def test_parse_optional_progression_parts():
    assert parse_expr("RD(4,9|n)") == RD(4, 9, 1, 0)
    assert parse_expr("RD(4,9|12n)") == RD(4, 9, 12, 0)


def test_parse_atoms():
    assert parse_expr("psi(q^3)") == Psi(3)
    assert parse_expr("psi") == Psi(1)
    assert parse_expr("theta(-q, -q^2)") == Theta(ThetaSpec(-1, 1, -1, 2))
    assert parse_expr("auxA*auxB/dissectA") == Div(Mul(AuxA(), AuxB()), DissectA())
    assert parse_expr("f1^-2") == Pow(Eta(1), -2)


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("f1 == ", 1, 7),
        ("f1 = f1", 1, 4),
        ("f1 == f1 +* f2", 1, 11),
        ("f1 ==\n  f2 $ f3", 2, 6),
        ("RD(4,9|6n+7) == f1", 1, 1),
        ("f1 === f1 mod 1", 1, 15),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_identity(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}:")


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol) as info:
        parse_identity("f1 == g2")
    assert info.value.column == 7
    with pytest.raises(UnknownSymbol):
        parse_expr("f0")


# -- printing / round trip -------------------------------------------------------


def test_catalog_round_trip():
    for entry in builtin_catalog():
        text = entry.text
        assert identity_text(parse_identity(text)) == text
        assert parse_identity(text) == entry.identity


def test_catalog_file_round_trip():
    entries = builtin_catalog()
    again = parse_catalog(dump_catalog(entries))
    assert [(e.id, e.identity, e.min_terms) for e in again] == [
        (e.id, e.identity, e.min_terms) for e in entries
    ]


def test_catalog_file_errors():
    with pytest.raises(ParseError) as info:
        parse_catalog("# header\nx: f1 == f1\ny: f1 == f2 +\n")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        parse_catalog("x: f1 == f1\nx: f2 == f2\n")
    with pytest.raises(ParseError):
        parse_catalog("x: f1 == f1 ; depth=3\n")


def test_power_of_q_keeps_parentheses():
    e = Pow(QPow(1), 3)
    assert to_text(e) == "(q)^3"
    assert parse_expr(to_text(e)) == e


SMALL = st.integers(min_value=1, max_value=40)
atoms = st.one_of(
    st.builds(Int, st.integers(min_value=0, max_value=99)),
    st.builds(QPow, st.integers(min_value=0, max_value=9)),
    st.builds(Eta, SMALL),
    st.builds(Psi, SMALL),
    st.builds(Theta, st.builds(ThetaSpec, st.sampled_from([1, -1]), SMALL, st.sampled_from([1, -1]), SMALL)),
    st.just(DissectA()),
    st.just(AuxA()),
    st.just(AuxB()),
    st.integers(min_value=1, max_value=48).flatmap(
        lambda m: st.builds(RD, st.integers(2, 9), st.integers(2, 9), st.just(m), st.integers(0, m - 1))
    ),
)


def _extend(children):
    binary = lambda cls: st.builds(cls, children, children)
    return st.one_of(binary(Add), binary(Sub), binary(Mul), binary(Div),
                     st.builds(Pow, children, st.integers(min_value=-6, max_value=6)))


expressions = st.recursive(atoms, _extend, max_leaves=12)


@settings(max_examples=200, deadline=None)
@given(expressions)
def test_random_ast_round_trip(e):
    text = to_text(e)
    assert parse_expr(text) == e
    assert to_text(parse_expr(text)) == text


@settings(max_examples=100, deadline=None)
@given(expressions, expressions, st.one_of(st.none(), st.integers(2, 1000)))
def test_random_identity_round_trip(lhs, rhs, m):
    ident = Identity(lhs, rhs, m)
    assert parse_identity(identity_text(ident)) == ident


# -- evaluation ------------------------------------------------------------------


def test_evaluate_examples():
    one = evaluate(parse_expr("f1/f1"), 30)
    assert one == TruncatedSeries.one(30)
    assert evaluate(parse_expr("RD(4,9|n)"), 10)[6] == 9
    assert evaluate(parse_expr("auxB"), 5).tolist() == [1, 1, 0, 2, 1]
    assert evaluate(parse_expr("auxA"), 50) == aux_a(50)


def test_evaluate_mixed_sum_in_modular_ring():
    m = CoefficientRing.mod(6)
    e = parse_expr("2*f1^4 - q*psi(q^3)")
    exact = evaluate(e, 60).tolist()
    assert evaluate(e, 60, m).tolist() == [c % 6 for c in exact]


def test_progression_order_shrinks():
    e = parse_expr("RD(4,9|12n+5)")
    assert valid_order(e, 100) == 8
    assert evaluate(e, 100).order == 8


def test_q_negative_power_is_rejected():
    with pytest.raises(Exception) as info:
        evaluate(parse_expr("f1/q"), 10)
    assert getattr(info.value, "expr", None) is not None


# -- verification ----------------------------------------------------------------


@pytest.mark.parametrize("entry_id", ["eq2", "eq3", "eq10", "eq4", "eq12", "eq24"])
def test_catalog_entries_pass(entry_id):
    rep = verify_identity(catalog_entry(entry_id))
    assert rep.status == PASS
    assert rep.n_checked >= catalog_entry(entry_id).min_terms


def test_cubed_denominator_variant_fails():
    rep = verify_identity(entry_from_text("cubed", CUBED_DENOMINATOR_TEXT, 400))
    assert rep.status == FAIL
    assert rep.counterexample == {"index": 1, "lhs": 3, "rhs": 1}


def test_sign_flipped_cubic_dissection_fails_at_exponent_one():
    flipped = catalog_entry("eq3").text.replace(" + q*", " - q*")
    rep = verify_identity(entry_from_text("eq3-flipped", flipped, 50), depth=50)
    assert rep.status == FAIL and rep.counterexample["index"] == 1


def test_insufficient_precision_is_never_pass():
    rep = verify_identity(catalog_entry("eq34"), depth=100)
    assert rep.status == INSUFFICIENT
    assert not rep.passed
    assert rep.n_checked == 8
    rep = verify_identity(catalog_entry("eq2"), depth=399)
    assert rep.status == INSUFFICIENT


def test_failure_is_reported_even_at_low_depth():
    rep = verify_identity(entry_from_text("bad", "f1 == f1 + q^3", 400), depth=10)
    assert rep.status == FAIL and rep.counterexample["index"] == 3


def test_audit_mode_agrees():
    for entry_id in ("eq19", "eq35", "eq7[3,2]"):
        entry = catalog_entry(entry_id)
        assert verify_identity(entry, audit=True).status == verify_identity(entry).status == PASS


def test_power_congruence_exponent_resolution():
    readings = check_power_readings()
    assert all(readings["p^(k-1)"].values())
    assert not all(readings["p^k-1"].values())
    assert resolved_power_reading() == "p^(k-1)"
    entry = power_congruence_entry(2, 2)
    assert entry.text == "f2^2 === f1^4 mod 4"
    for m in (1, 2):
        assert verify_identity(power_congruence_entry(3, 2, m), depth=200).status == PASS


def test_builtin_ids():
    ids = [e.id for e in builtin_catalog()]
    assert len(ids) == len(set(ids)) == 30
    assert ids[:3] == ["eq2", "eq3", "eq4"]
    with pytest.raises(KeyError):
        catalog_entry("nope")


def test_sub_node_printing():
    assert to_text(Sub(Eta(1), Add(Eta(2), Eta(3)))) == "f1 - (f2 + f3)"
