import pytest

import oracles as O
from krasner import ideals as I
from krasner.core import InputError, PreconditionError
from krasner.corpus import corpus

SMALL = corpus(max_size=8)
IDS = [h.name for h in SMALL]


@pytest.mark.parametrize("h", SMALL, ids=IDS)
def test_lattice_matches_bruteforce(h):
    want = O.all_ideals(h)
    assert sorted(I._enumerate_masks(h, 64)) == want
    assert sorted(I.enumerate_hyperideals_bruteforce(h)) == want


@pytest.mark.parametrize("h", SMALL, ids=IDS)
def test_primes_and_radicals(h):
    for P in I.proper_ideals(h):
        assert I.is_prime(h, P) == O.is_prime(h, P)
        assert I.is_prime_elementwise(h, P) == I.is_prime_by_ideals(h, P)
        r = I.radical_mask(h, P)
        assert r == O.radical(h, P)
        assert r == I.radical_by_powers(h, P).mask
        assert I.radical_mask(h, r) == r


@pytest.mark.parametrize("h", SMALL, ids=IDS)
def test_colon(h):
    for P in I._enumerate_masks(h, 64):
        for u in range(h.size):
            c = I.colon(h, P, u).mask
            assert c == O.colon(h, P, u)
            assert I.is_hyperideal(h, c)
            assert P & ~c == 0


@pytest.mark.parametrize("h", SMALL, ids=IDS)
def test_mulsets(h):
    want = [S for S in range(1, 1 << h.size) if bin(S).count("1") <= 3 and O.is_mulset(h, S)]
    assert sorted(I.enumerate_multiplicative_sets(h, 3)) == want


@pytest.mark.parametrize("h", SMALL[:20], ids=IDS[:20])
def test_powers_descend(h):
    for P in I._enumerate_masks(h, 64):
        chain = I.power_chain(h, P)
        assert chain[0] == P
        for a, b in zip(chain, chain[1:]):
            assert b & ~a == 0 and a != b
        for Q in chain:
            assert I.is_hyperideal(h, Q)


def test_power_exponent_form(hyper3):
    P = hyper3.subset(["0", "u"])
    assert I.ideal_power(hyper3, P, 2).mask == 1 << hyper3.zero
    from krasner.corpus import zk

    h = zk(4, 2, 3)
    with pytest.raises(InputError):
        I.ideal_power(h, 0b101, 2)


def test_hyper3_facts(hyper3):
    h = hyper3
    zero, zu = h.subset(["0"]), h.subset(["0", "u"])
    assert I.enumerate_hyperideals_bruteforce(h) == [zero, zu, h.full]
    assert I.is_prime(h, zu) and not I.is_prime(h, zero)
    assert I.is_primary(h, zero)
    assert not I.is_hyperintegral_domain(h)
    assert I.maximals(h) == [zu]
    assert I.radical_mask(h, zero) == zu


def test_ideal_rejects_nonideal(hyper3):
    with pytest.raises(InputError, match="not a hyperideal"):
        I.ideal(hyper3, hyper3.subset(["0", "1"]))
    chk = I.is_hyperideal(hyper3, hyper3.subset(["u"]))
    assert not chk and chk.clause == "contains zero"


def test_prime_requires_proper(hyper3):
    with pytest.raises(PreconditionError):
        I.is_prime(hyper3, hyper3.full)


def test_enumeration_cap(hyper3):
    with pytest.raises(InputError):
        I.enumerate_hyperideals(hyper3, cap=2)
