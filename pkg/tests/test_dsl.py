import json

import pytest
from hypothesis import given, settings, strategies as st

from qmock.dsl import (INT_FUNCS, MONO_FUNCS, ArityError, BinOp, Call, EvaluationError, IdentitySpec,
                       IngestError, LexicalError, Neg, NonMonomialError, Num, Pow, SyntaxError_, Var, evaluate,
                       identities_from_json, load_identities, parse, to_source)
from qmock.mock import MOCK_NAMES
from qmock.qseries import QSeries
from qmock.theta import Monomial

from conftest import K


def ev(src, order):
    return evaluate(parse(src), order)


def test_smoke():
    e = parse("T(1,2)^2 / E(1)")
    assert e == BinOp("/", Pow(Call("T", (1, 2)), 2), Call("E", (1,)))


def test_appell_node():
    e = parse("m(1; -q; q^3)")
    assert e == Call("m", (Monomial(0, 0), Monomial(K // 2, 1), Monomial(0, 3)))


def test_precedence():
    assert parse("-q^2") == Neg(Pow(Var("q"), 2))
    assert parse("1 - 2*q + 3") == BinOp("+", BinOp("-", Num(1), BinOp("*", Num(2), Var("q"))), Num(3))
    assert parse("q^-3") == parse("q^(-3)") == Pow(Var("q"), -3)


def test_monomial_arguments():
    e = parse("psi10(w^2*q), chi10(-zeta^5*q^8)".split(",")[0])
    assert e.args == (Monomial(8, 1),)
    assert parse("chi10(-zeta^5*q^8)").args == (Monomial(11, 8),)
    assert parse("m(q/q^3; -1; q^2)").args[0] == Monomial(0, -2)


@pytest.mark.parametrize("src, err, col", [
    ("phi10(q", SyntaxError_, 8),
    ("T(1,2) $ 3", LexicalError, 8),
    ("T(1)", ArityError, 1),
    ("m(1 + q; q; q^3)", NonMonomialError, 3),
    ("T(q, 2)", NonMonomialError, 3),
    ("foo(q)", SyntaxError_, 1),
    ("2 +", SyntaxError_, 4),
    ("T(1,0)", SyntaxError_, 1),
])
def test_errors_are_located(src, err, col):
    with pytest.raises(err) as info:
        parse(src)
    assert info.value.line == 1 and info.value.col == col
    assert f"column {col}" in str(info.value)


def test_end_of_input_message():
    with pytest.raises(SyntaxError_, match="end of input"):
        parse("phi10(q")


def test_multiline_location():
    with pytest.raises(SyntaxError_) as info:
        parse("T(1,2)\n  * )")
    assert (info.value.line, info.value.col) == (2, 5)


def test_w_needs_three():
    with pytest.raises(SyntaxError_):
        parse("w", K=4)


def test_evaluate_examples():
    assert ev("Tb(0,1)", 50).equals(ev("2*Tb(1,4)", 50))
    assert ev("q^0", 30).equals(QSeries.one(30))
    f = ev("psi6(w*q) - psi6(w^2*q)", 60)
    g = ev("psi6(q)", 60)
    wdiff = ev("w - w^2", 1).coeff(0)
    for e in range(60):
        expect = {0: 0 * g.coeff(e), 1: g.coeff(e) * wdiff, 2: -g.coeff(e) * wdiff}[e % 3]
        assert f.coeff(e) == expect


def test_results_are_truncated_to_order():
    assert ev("q^(-5)*E(1)^5", 40).prec == 40
    assert ev("E(1)/q^3", 40).prec == 40
    assert ev("phi10(q^9)*q^2", 100).prec == 100


def test_evaluation_error_path():
    with pytest.raises(EvaluationError) as info:
        ev("E(1) + 2*m(1; 1; q)", 20)
    assert "m(1; 1; q)" in str(info.value) and info.value.path


def test_division_by_zero_series():
    with pytest.raises(EvaluationError):
        ev("1/(q - q)", 10)


# ------------------------------------------------------------ random ASTs

def monos():
    return st.builds(Monomial, st.integers(0, K - 1), st.integers(-6, 9), st.just(K))


@st.composite
def calls(draw):
    name = draw(st.sampled_from(sorted(INT_FUNCS) + sorted(MONO_FUNCS)))
    if name in INT_FUNCS:
        args = [draw(st.integers(-9, 20)) for _ in range(INT_FUNCS[name])]
        args[-1] = abs(args[-1]) + 1
    else:
        args = [draw(monos()) for _ in range(MONO_FUNCS[name])]
    return Call(name, tuple(args))


leaves = st.one_of(st.builds(Num, st.integers(0, 50)), st.builds(Var, st.sampled_from(["q", "w", "zeta"])),
                   calls())


def extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Pow, children, st.integers(-4, 6)),
    )


asts = st.recursive(leaves, extend, max_leaves=12)


@settings(max_examples=200)
@given(asts)
def test_round_trip(e):
    src = to_source(e)
    assert parse(src) == e
    assert to_source(parse(src)) == src


POOL = ["E(1)", "T(1,3)", "Tb(2,5)", "q^(-2)*E(4)", "phi10(q)", "chi10(-q^2)", "m(q; -1; q^3)",
        "X10(w*q)", "1 + 3*q - w*q^2", "theta(-q; q^4)", "D2(1; q^3; q^8; q^4)", "rho6(q)"]


@settings(max_examples=40)
@given(st.sampled_from(POOL), st.sampled_from(POOL), st.integers(5, 60))
def test_compositional(a, b, N):
    prod = ev(f"({a})*({b})", N)
    ref = ev(a, N) * ev(b, N)
    assert prod.truncate(ref.prec).equals(ref)
    assert ev(f"({a}) + ({b})", N).equals(ev(a, N) + ev(b, N))


# ------------------------------------------------------------ identities and ingest

ENTRY = {"name": "euler", "lhs": "T(1,3)", "rhs": "E(1)", "default_order": 50, "cyclotomic_order": 2,
         "tags": ["custom"]}


def test_ingest_round_trip(tmp_path):
    path = tmp_path / "ids.json"
    path.write_text(json.dumps([ENTRY, {**ENTRY, "name": "v", "valence_group": 3}]), encoding="utf-8")
    specs = load_identities(path)
    assert specs[0] == IdentitySpec("euler", "T(1,3)", "E(1)", 50, 2, ("custom",))
    assert specs[1].valence_group == 3
    assert [s.to_json() for s in specs][0] == ENTRY


@pytest.mark.parametrize("bad, msg", [
    ({**ENTRY, "extra": 1}, "unknown field"),
    ({k: v for k, v in ENTRY.items() if k != "rhs"}, "missing"),
    ({**ENTRY, "default_order": "50"}, "default_order"),
    ({**ENTRY, "default_order": True}, "default_order"),
    ({**ENTRY, "lhs": "T(1,"}, "syntax error"),
    ({**ENTRY, "cyclotomic_order": 5}, "does not divide"),
    ({**ENTRY, "tags": [1]}, "tags"),
    ({**ENTRY, "valence_group": 0}, "valence_group"),
])
def test_ingest_rejects(bad, msg):
    with pytest.raises(IngestError, match=msg):
        identities_from_json([bad])


def test_ingest_not_array(tmp_path):
    with pytest.raises(IngestError):
        identities_from_json({"name": "x"})
    path = tmp_path / "broken.json"
    path.write_text("[{", encoding="utf-8")
    with pytest.raises(IngestError, match="invalid JSON"):
        load_identities(path)


def test_all_mock_names_are_functions():
    assert all(MONO_FUNCS[name] == 1 for name in MOCK_NAMES)
