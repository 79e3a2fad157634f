import json

import pytest

from krasner import ideals as I
from krasner import theorems as T
from krasner.corpus import corpus, hyper3, zk


def test_registry():
    assert len(T.THEOREMS) == 27 == len(T.STATEMENTS)
    with pytest.raises(KeyError):
        T.run_all([hyper3()], only=["T99"])


def test_t15_holds_on_corpus():
    [rep] = T.run_all(corpus(max_size=6), only=["T15"])
    assert rep.hypothesis_met > 0 and rep.violation_count == 0


def test_t11_violation_replays():
    h = hyper3()
    rep = T.run_theorem("T11", h)
    assert rep.violation_count >= 1
    v = rep.violations[0]
    hyp, ok, detail = T.replay("T11", h, v["params"])
    assert hyp is True and ok is False
    assert "hyperintegral domain False" in detail
    assert I.is_primary(h, 1 << h.zero) and not I.is_hyperintegral_domain(h)


def test_t11_holds_on_domains():
    rep = T.run_theorem("T11", zk(3))
    assert rep.violation_count == 0


def test_budget_partial():
    [rep] = T.run_all([hyper3(), zk(4)], T.Budget(max_instances=5), only=["T01"])
    assert rep.partial and rep.total == 5


def test_budget_validation():
    with pytest.raises(ValueError):
        T.Budget(max_mulset_size=0)
    with pytest.raises(ValueError):
        T.Budget(max_instances=0)


def test_deterministic():
    a = [r.to_dict(timing=False) for r in T.run_all(corpus(max_size=4), only=["T01", "T11", "T24"])]
    b = [r.to_dict(timing=False) for r in T.run_all(corpus(max_size=4), only=["T01", "T11", "T24"])]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_t01_hypothesis_can_fail():
    """Some instance has rad(phi(P)) outside phi(rad(P)), so the extra
    hypothesis of the radical statement genuinely filters."""
    found = False
    for h in corpus(max_size=6):
        ctx = T.Context(h, T.Budget())
        for a in T.t01_inst(h, ctx):
            P, phi = a["P"], a["phi"]
            R = T.rad(h, P)
            if T.pds(h, P, phi, a["delta"], a["s"]) and T.rad(h, T.phi_of(h, phi, P)) & ~T.phi_of(h, phi, R):
                hyp, ok, _ = T.t01_check(h, a)
                assert hyp is False and ok is True
                found = True
                break
        if found:
            break
    assert found


def test_witness_checks():
    for w in T.witness_checks():
        assert w["refutes"] == w["expected"]
        assert w["agrees_with_tables"] is not False


def test_statements_have_no_section_numbers():
    for s in T.STATEMENTS.values():
        assert "Theorem" not in s and "Section" not in s
