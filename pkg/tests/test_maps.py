import pytest

from krasner import ideals as I
from krasner.core import InputError
from krasner.corpus import corpus
from krasner.maps import (
    EXPANSION, REDUCTION, get_map, is_constant, is_idempotent, standard_deltas, standard_phis, table_map,
    verify_contract,
)

SMALL = corpus(max_size=8)


@pytest.mark.parametrize("h", SMALL, ids=[h.name for h in SMALL])
def test_builtins_satisfy_contract(h):
    for fn in standard_phis(h) + standard_deltas():
        rep = verify_contract(fn, h)
        assert rep.ok, (fn.id, rep.violations[:3])


def test_builtin_values(hyper3):
    h = hyper3
    zu = h.subset(["0", "u"])
    z = 1 << h.zero
    assert get_map("phi0").apply(h, zu) == z
    assert get_map("phi1").apply(h, zu) == zu
    assert get_map("phiN").apply(h, zu) == z
    assert get_map("delta0").apply(h, z) == z
    assert get_map("delta1").apply(h, z) == zu
    assert get_map("deltaK").apply(h, z) == h.full
    assert get_map("deltaM").apply(h, z) == zu
    assert get_map("pow:3").apply(h, zu) == z


def test_idempotent_and_constant(hyper3):
    assert is_idempotent("delta1", hyper3)
    assert is_idempotent("phi1", hyper3)
    assert is_constant("deltaK", hyper3)
    assert is_constant("phi0", hyper3)
    assert not is_constant("delta0", hyper3)


def test_kind_mismatch():
    with pytest.raises(InputError):
        get_map("phi0", EXPANSION)
    with pytest.raises(InputError):
        get_map("delta9")


def test_table_map_checks(hyper3):
    h = hyper3
    L = I._enumerate_masks(h, 64)
    good = table_map("t", REDUCTION, h, {P: 1 << h.zero for P in L})
    assert verify_contract(good, h).ok
    with pytest.raises(InputError, match="no value"):
        table_map("t", REDUCTION, h, {L[0]: L[0]})
    with pytest.raises(InputError, match="not a hyperideal"):
        table_map("t", REDUCTION, h, {P: h.subset(["1"]) for P in L})
    with pytest.raises(InputError):
        table_map("t", "sideways", h, {P: P for P in L})


def test_contract_violations_reported(hyper3):
    h = hyper3
    L = I._enumerate_masks(h, 64)
    grow = table_map("grow", REDUCTION, h, {P: h.full for P in L})
    kinds = {v[0] for v in verify_contract(grow, h).violations}
    assert "containment" in kinds
    z, zu = L[0], L[1]
    bump = table_map("bump", EXPANSION, h, {z: zu, zu: zu, h.full: h.full})
    assert verify_contract(bump, h).ok
    flip = table_map("flip", REDUCTION, h, {z: z, zu: zu, h.full: z})
    kinds = {v[0] for v in verify_contract(flip, h).violations}
    assert kinds == {"monotonicity"}
