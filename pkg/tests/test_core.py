import numpy as np
import pytest

from conftest import mutate
from krasner.core import (
    MAX_SIZE, AxiomError, FiniteHyperring, InputError, from_ring, mask_of, members, popcount, validate,
)
from krasner.corpus import base_members, zk


def test_bitmask_helpers():
    assert members(0b1011) == [0, 1, 3]
    assert mask_of([0, 1, 3]) == 0b1011
    assert popcount(0b1011) == 3
    assert members(0) == []


def test_hyper3_tables(hyper3):
    h = hyper3
    z, o, u = (h.index(x) for x in "01u")
    assert h.eval_f((o, o)) == h.full
    assert h.eval_f((u, u)) == mask_of([z, u])
    assert h.eval_g((u, u)) == z
    assert h.eval_g((o, u)) == u
    assert validate(h).ok


@pytest.mark.parametrize("h", base_members(), ids=lambda h: h.name)
def test_corpus_members_validate(h):
    rep = validate(h)
    assert rep.ok, str(rep)
    assert h.is_validated


def test_from_ring_arity():
    h = zk(4, 3, 3)
    assert (h.m, h.n, h.size) == (3, 3, 4)
    assert h.eval_f((1, 2, 3)) == 1 << 2
    assert h.eval_g((2, 3, 3)) == 2


@pytest.mark.parametrize("m,n", [(1, 2), (2, 1)])
def test_bad_arity(m, n):
    with pytest.raises(InputError):
        from_ring("bad", 3, lambda t: sum(t) % 3, lambda t: 0, m, n)


def test_bad_table_rank():
    f = np.ones((2, 2), dtype=np.uint64)
    g = np.zeros((2, 2, 2), dtype=np.int64)
    with pytest.raises(InputError):
        FiniteHyperring(2, 2, f, g, 0, 1)


def test_carrier_cap():
    assert MAX_SIZE == 64
    k = MAX_SIZE + 1
    with pytest.raises(InputError):
        FiniteHyperring(2, 2, np.ones((k, k), dtype=np.uint64), np.zeros((k, k), dtype=np.int64), 0, 1)


def test_unknown_name(hyper3):
    with pytest.raises(InputError):
        hyper3.index("v")


def test_mutations_named(hyper3):
    cases = {
        "unique inverse": mutate(hyper3, f={("1", "u"): ["0", "1"]}),
        "distributivity": mutate(hyper3, g={("u", "u"): "u"}),
        "scalar identity": mutate(hyper3, g={("1", "u"): "0"}),
    }
    for axiom, h in cases.items():
        rep = validate(h)
        assert not rep.ok
        assert axiom in rep.axioms
        with pytest.raises(AxiomError):
            h.require_valid()


def test_noncommutative_g_rejected():
    def mul(t):
        return t[0]

    h = from_ring("left", 2, lambda t: sum(t) % 2, mul)
    assert not validate(h).ok


def test_package_exports():
    import types

    import krasner

    assert krasner.hyper3().size == 3
    assert isinstance(krasner.corpus, types.ModuleType)
    assert set(krasner.__all__) <= set(dir(krasner))
