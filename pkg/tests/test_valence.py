from fractions import Fraction
from math import gcd

import pytest

from qmock.dsl import IdentitySpec
from qmock.registry import BY_NAME
from qmock.valence import (P2, EtaQuotientForm, ValenceError, bound_B, cusps_and_widths, group_index,
                           invariant_order, minimal_level, normalize, term_to_form, valence_bound)
from qmock.verify import PASS, select, verify_spec


def phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def index_oracle(N):
    """[PSL2(Z) : image of Gamma_1(N)] from N^2/2 prod (1 - 1/p^2), N >= 3."""
    out = Fraction(N * N, 2)
    for p in range(2, N + 1):
        if N % p == 0 and all(p % r for r in range(2, p)):
            out *= 1 - Fraction(1, p * p)
    return out


def cusp_count_oracle(N):
    return {1: 1, 2: 2, 3: 2, 4: 3}.get(N) or sum(phi(d) * phi(N // d) for d in range(1, N + 1) if N % d == 0) // 2


def test_level_one():
    (c,) = cusps_and_widths(1)
    assert c.is_infinity and c.width == 1 and c.label() == "oo"


@pytest.mark.parametrize("N", list(range(1, 31)) + [36, 54])
def test_widths_sum_to_index(N):
    cusps = cusps_and_widths(N)
    assert sum(c.width for c in cusps) == group_index(N)
    assert len(cusps) == cusp_count_oracle(N)
    if N >= 3:
        assert group_index(N) == index_oracle(N)
    assert cusps[0].is_infinity


def test_level_12_widths():
    got = [(c.label(), c.width) for c in cusps_and_widths(12)]
    assert got == [("oo", 1), ("0/1", 12), ("1/2", 6), ("1/3", 4), ("2/3", 4), ("1/4", 3), ("3/4", 3),
                   ("1/5", 12), ("1/6", 2), ("5/12", 1)]
    assert sum(w for _, w in got) == index_oracle(12) == 48


def test_level_54_cusps():
    cusps = cusps_and_widths(54)
    assert len(cusps) == 60 and sum(c.width for c in cusps) == 972


def test_P2():
    assert P2(Fraction(0)) == Fraction(1, 6)
    assert P2(Fraction(1, 2)) == Fraction(-1, 12)
    assert P2(Fraction(7, 3)) == P2(Fraction(1, 3)) == P2(Fraction(2, 3))


def test_constant_form():
    one = EtaQuotientForm.build(1, 0, {})
    assert bound_B([one], 54) == (0, 1)
    assert bound_B([one], 1) == (0, 1)


def test_non_modular_forms_are_refused():
    eta = EtaQuotientForm.build(1, 0, {("eta", 0, 1): 1})
    assert not eta.modular_on(6)[0]
    with pytest.raises(ValenceError):
        invariant_order(eta, cusps_and_widths(6)[1], 6)
    with pytest.raises(ValenceError):
        valence_bound(IdentitySpec("x", "E(5)", "1", valence_group=6))


def test_appell_terms_are_refused():
    with pytest.raises(ValenceError, match="Appell|mock|m\\("):
        valence_bound(IdentitySpec("x", "m(q; -1; q^3)", "phi6(q)/2", valence_group=12))


def test_running_example():
    r = valence_bound(BY_NAME["prop42-2"])
    assert (r.N, r.B, r.required_order, r.B_sharp) == (54, -63, 64, -62)
    assert len(r.forms) == 4 and len(r.cusps) == 60
    assert verify_spec(r.normalized, r.required_order).status == PASS


def test_running_example_functions():
    terms = normalize(BY_NAME["prop42-2"].lhs, BY_NAME["prop42-2"].rhs)
    paper = ["q*T(1,2)*T(9,18)*E(18)^3*T(10,18)*T(6,54)/(T(3,6)*E(3)^2*T(1,6)*T(9,54)*T(9,18)*T(1,18))",
             "q^2*T(1,2)*T(9,18)*E(18)^3*T(16,18)*T(12,54)/(T(3,6)*E(3)^2*T(1,6)*T(9,54)*T(9,18)*T(7,18))",
             "q^(-1)*T(1,2)*T(9,18)*E(18)^3*T(4,18)*T(30,54)/(T(3,6)*E(3)^2*T(1,6)*T(9,54)*T(9,18)*T(13,18))",
             "q^(-1)*T(1,2)*T(9,18)*E(54)^3*T(18,54)^2/(T(3,6)*E(3)^2*T(9,54)^3*T(27,54))"]
    from qmock.dsl import evaluate, parse
    mine = [evaluate(parse(t.to_source()), 60) for t in terms]
    ref = [evaluate(parse(p), 60) for p in paper]
    # the normalized identity is f1 + f2 + f3 - f4 = 1 up to ordering of the f_j
    total = mine[0]
    for f in mine[1:]:
        total = total + f
    assert total.equals(ref[0] + ref[1] + ref[2] - ref[3])
    assert sorted(str(f.coeff(f.valuation())) + str(f.valuation()) for f in mine) == \
        sorted(str(f.coeff(f.valuation())) + str(f.valuation()) for f in (ref[0], ref[1], ref[2], -ref[3]))


@pytest.mark.parametrize("spec", select(tags=["valence"]), ids=lambda s: s.name)
def test_valence_identities(spec):
    r = valence_bound(spec)
    for j, f in enumerate(r.forms):
        # total order zero over all cusps
        assert sum(c.width * c.orders[j] for c in r.cusps) == 0
        # order at i-infinity is the leading exponent of the expansion
        assert invariant_order(f, r.cusps[0], r.N) == f.series(40).valuation()
    assert r.B <= r.B_sharp <= 0
    assert verify_spec(r.normalized, r.required_order).status == PASS


def test_minimal_levels():
    levels = {}
    for name in ("prop42-1", "prop42-2", "prop42-3", "prop42-4"):
        spec = BY_NAME[name]
        forms = [term_to_form(t) for t in normalize(spec.lhs, spec.rhs)]
        levels[name] = minimal_level(forms)
        assert levels[name] == spec.valence_group
    assert levels["prop42-2"] == 54
