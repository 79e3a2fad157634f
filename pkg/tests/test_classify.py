import pytest

import oracles as O
from krasner import classify as C
from krasner import ideals as I
from krasner.core import PreconditionError
from krasner.corpus import corpus
from krasner.maps import get_map, standard_deltas, standard_phis

SMALL = corpus(max_size=6)
IDS = [h.name for h in SMALL]


def cases(h, size=2):
    for S in I.enumerate_multiplicative_sets(h, size):
        for P in I.proper_ideals(h):
            if not P & S:
                yield P, S


@pytest.mark.parametrize("h", SMALL, ids=IDS)
def test_matches_oracle(h):
    for P, S in cases(h):
        for phi in standard_phis(h):
            for delta in standard_deltas():
                X, D = phi.apply(h, P), delta.apply(h, P)
                got = C.is_phi_delta_S_primary(h, P, phi, delta, S)
                assert got.verdict == O.classify(h, P, X, D, S), (h.fmt(P), h.fmt(S), phi.id, delta.id)
                if got.verdict == C.FAILS:
                    r = got.refutation
                    assert C.replay(h, P, X, D, r.s, r.tuple)
                    assert O.refutes(h, P, X, D, r.s, r.tuple)


@pytest.mark.parametrize("h", SMALL, ids=IDS)
def test_trivial_maps(h):
    for P, S in cases(h, 3):
        assert C.is_phi_delta_S_primary(h, P, "phi1", "delta0", S).verdict == C.VACUOUS
        for phi in standard_phis(h):
            assert C.is_phi_delta_S_primary(h, P, phi, "deltaK", S).holds


@pytest.mark.parametrize("h", SMALL, ids=IDS)
def test_implication_chain(h):
    """S-primary implies weakly-S-primary implies phi-S for phi above phi0,
    and enlarging delta or phi never breaks a class."""
    for P, S in cases(h):
        sp = C.is_S_primary(h, P, S).holds
        wsp = C.is_weakly_S_primary(h, P, S).holds
        assert not sp or wsp
        for phi in standard_phis(h):
            assert not wsp or C.is_phi_S_primary(h, P, phi, S).holds
        order = ["delta0", "delta1", "deltaM", "deltaK"]
        vals = [C.is_delta_S_primary(h, P, d, S).holds for d in order]
        assert vals == sorted(vals)
        phis = ["phi0", "phiW", "phiN", "phi1"]
        for d in standard_deltas():
            Xs = [get_map(p).apply(h, P) for p in phis]
            vs = [C.is_phi_delta_S_primary(h, P, p, d, S).holds for p in phis]
            for i in range(len(phis)):
                for j in range(len(phis)):
                    if Xs[i] & ~Xs[j] == 0 and vs[i]:
                        assert vs[j]


@pytest.mark.parametrize("h", [x for x in SMALL if x.size <= 4], ids=lambda x: x.name)
def test_strongly_implies_elementwise(h):
    for P, S in cases(h):
        for phi in ("phi0", "phiN", "phi1"):
            for delta in ("delta0", "delta1"):
                st = C.is_strongly_phi_delta_S_primary(h, P, phi, delta, S)
                el = C.is_phi_delta_S_primary(h, P, phi, delta, S)
                if st.holds:
                    assert el.holds


def test_strongly_hyper3(hyper3):
    h = hyper3
    P, S = h.subset(["0", "u"]), h.subset(["1"])
    st = C.is_strongly_phi_delta_S_primary(h, P, "phiN", "delta0", S)
    assert st.verdict == C.HOLDS
    el = C.is_phi_delta_S_primary(h, P, "phiN", "delta0", S)
    assert el.verdict == O.classify(h, P, 1 << h.zero, P, S)


def test_fixed_s(hyper3):
    h = hyper3
    P, S = 1 << h.zero, h.subset(["1"])
    r = C.is_S_primary(h, P, S, s=h.one)
    assert r.witness_s == h.one
    with pytest.raises(PreconditionError):
        C.is_S_primary(h, P, S, s=h.index("u"))


def test_preconditions(hyper3):
    h = hyper3
    zu = h.subset(["0", "u"])
    with pytest.raises(PreconditionError):
        C.is_S_primary(h, h.full, h.subset(["1"]))
    with pytest.raises(PreconditionError, match="multiplicative"):
        C.is_S_primary(h, zu, h.subset(["u"]) | h.subset(["1"]) & 0)
    with pytest.raises(PreconditionError, match="disjoint"):
        C.is_S_primary(h, zu, h.subset(["0"]))


def test_hyper3_zero_ideal(hyper3):
    """{0} is S-primary for S = {1} (so primary) but not prime, since u * u = 0."""
    h = hyper3
    z, S, u = 1 << h.zero, h.subset(["1"]), h.index("u")
    assert C.is_S_primary(h, z, S).verdict == C.HOLDS
    assert I.is_primary(h, z)
    assert I.prime_witness(h, z) == (u, u)
    assert C.is_phi_delta_S_primary(h, z, "phi0", "delta0", S).verdict == C.VACUOUS
    r = C.is_delta_S_primary(h, z, "delta0", S)
    assert r.verdict == C.FAILS and r.refutation.tuple == (u, u)
