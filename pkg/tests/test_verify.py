import json
from dataclasses import replace

import pytest

from qmock.dsl import IdentitySpec, evaluate, parse
from qmock.registry import BY_NAME, REGISTRY
from qmock.verify import (ERROR, FAIL, PASS, UnknownIdentityError, field_for, lookup, select, verify,
                          verify_all, verify_spec)

MUTATIONS = [("tenth-1", 7), ("tenth-5", 0), ("sixth-A", 33), ("new-sixth-2", 1), ("thm-B-1", 12),
             ("thm-Rxi-3", 5), ("lemma41-2", 50), ("prop5x-7", 3), ("lemma5-theta-11", 19),
             ("appell-form-9", 71)]


def mutate(name, k):
    spec = BY_NAME[name]
    return replace(spec, name=f"{name}+q^{k}", rhs=f"({spec.rhs}) + q^{k}")


def test_registry_shape():
    names = [s.name for s in REGISTRY]
    assert len(names) == len(set(names)) == 82
    expected = {"tenth": 6, "sixth": 5, "thm2": 19, "lemma41": 5, "prop42": 4, "prop5x": 13,
                "lemma5-theta": 11, "appell-form": 19}
    for tag, n in expected.items():
        assert len(select(tags=[tag])) == n, tag


def test_registry_entries_parse():
    for spec in REGISTRY:
        spec.check(field_for(spec))


@pytest.mark.parametrize("name, order", [("tenth-5", 100), ("new-sixth-1", 120)])
def test_examples(name, order):
    r = verify(name, order)
    assert r.status == PASS and r.window[1] == order


def test_exact_zero_identity():
    spec = BY_NAME["thm-Rxi-3"]
    assert spec.rhs == "0"
    lhs = evaluate(parse(spec.lhs), 120)
    assert lhs.is_zero() and lhs.prec == 120


@pytest.mark.parametrize("name, k", MUTATIONS)
def test_mutation_controls(name, k):
    r = verify_spec(mutate(name, k))
    assert r.status == FAIL and r.first_mismatch == k
    assert r.lhs_coeff != r.rhs_coeff


def test_unknown_identity():
    with pytest.raises(UnknownIdentityError):
        lookup("tenth-99")


def test_error_reports():
    r = verify_spec(IdentitySpec("bad", "m(1; 1; q)", "0"))
    assert r.status == ERROR and "ZLattice" in r.error
    assert verify("tenth-1", order=0).status == ERROR
    r = verify_spec(IdentitySpec("needs5", "q", "q", cyclotomic_order=5), K=12)
    assert r.status == ERROR


def test_batch_is_complete_and_ordered():
    specs = [BY_NAME["tenth-2"], mutate("tenth-6", 4), BY_NAME["sixth-B"], IdentitySpec("bad", "T(1,", "0")]
    out = verify_all(specs=specs)
    assert [r.name for r in out.reports] == [s.name for s in specs]
    assert out.counts() == {"pass": 2, "fail": 1, "error": 1}


def test_parallel_matches_serial():
    specs = select(tags=["thm2"])
    a = verify_all(specs=specs).to_json()
    b = verify_all(specs=specs, jobs=3).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_json_schema():
    r = verify("tenth-3").to_json()
    assert set(r) == {"name", "status", "window", "elapsed_ms"} and r["elapsed_ms"] is None
    bad = verify_spec(mutate("tenth-3", 2)).to_json(timing=True)
    assert bad["first_mismatch"] == 2 and isinstance(bad["elapsed_ms"], float)


def test_text_matches_json():
    r = verify_spec(mutate("sixth-A", 9))
    line, js = r.text(), r.to_json()
    assert line.startswith(FAIL) and f"q^{js['first_mismatch']}" in line


def test_ingested_identities_take_part():
    extra = [IdentitySpec("mine", "T(1,3)", "E(1)", 40, 2, ("custom",))]
    assert [s.name for s in select(tags=["custom"], extra=extra)] == ["mine"]
    assert verify("mine", extra=extra).status == PASS
