"""Deciders for the phi-delta-S-primary family of hyperideal classes.

Every elementwise class reduces to one search: find an n-tuple ``u`` with
``g(u)`` in ``P`` but outside an excluded set ``X`` such that, for the chosen
``s`` and every slot ``i``, ``g(u_i, s, 1..)`` is outside ``P`` and
``g(u)`` with slot ``i`` replaced by ``s`` is outside an expansion set
``D``. The table below is how each class picks ``X`` and ``D``:

    ============================  ========  ========  =======
    class                         X         D         s
    ============================  ========  ========  =======
    phi-delta-S-primary           phi(P)    delta(P)  in S
    delta-S-primary               empty     delta(P)  in S
    S-primary                     empty     rad(P)    in S
    weakly S-primary              {0}       rad(P)    in S
    phi-S-primary                 phi(P)    rad(P)    in S
    delta-primary                 empty     delta(P)  1
    phi-delta-primary             phi(P)    delta(P)  1
    ============================  ========  ========  =======
"""
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import ideals as I
from .core import PreconditionError, is_subset, members
from .maps import EXPANSION, REDUCTION, get_map

HOLDS = "holds"
FAILS = "fails"
VACUOUS = "vacuous"
SAMPLED = "holds-on-sample"


@dataclass(frozen=True)
class Refutation:
    s: object
    tuple: tuple
    detail: str = ""


@dataclass(frozen=True)
class Classification:
    verdict: str
    kind: str = ""
    witness_s: object = None
    refutation: Refutation = None
    tried: tuple = field(default=(), repr=False)

    @property
    def holds(self):
        return self.verdict != FAILS

    def __bool__(self):
        return self.holds


# ---------------------------------------------------------------------------
# preconditions


def check_mulset(h, S):
    S = I._m(S)
    if not I.is_multiplicative(h, S):
        raise PreconditionError(f"{h.fmt(S)} is not a multiplicative set of {h.name}")
    return S


def check_admissible(h, P, S):
    P, S = I._m(P), I._m(S)
    I._require_proper(h, P)
    check_mulset(h, S)
    if P & S:
        raise PreconditionError(f"{h.fmt(P)} meets {h.fmt(S)}; the hyperideal must be disjoint from S")
    return P, S


def _candidates(h, S, s):
    if s is None:
        return members(S)
    s = int(s)
    if not S >> s & 1:
        raise PreconditionError(f"{h.names[s]} is not in {h.fmt(S)}")
    return [s]


# ---------------------------------------------------------------------------
# the shared elementwise search


def refute(h, P, X, D, s):
    """Cached ``(antecedent_met, refuting tuple or None)``."""
    key = ("refute", P, X, D, s)
    try:
        return h.cache[key]
    except KeyError:
        pass
    seen, idx = I._refute(h, P, X, D, s)
    val = h.cache[key] = (seen, None if idx < 0 else I.unflatten(h, idx))
    return val


def assoc(h, P, X, D, s):
    """Whether the defining implication holds for this one ``s``. Ignores
    properness and disjointness, which callers check separately."""
    return refute(h, P, X, D, s)[1] is None


def replay(h, P, X, D, s, u):
    """Independently re-check that tuple ``u`` refutes the class with ``s``."""
    u = tuple(int(x) for x in u)
    p = h.eval_g(u)
    if not (P >> p & 1) or (X >> p & 1):
        return False
    for i in range(h.n):
        if P >> h.g2(u[i], s) & 1:
            return False
        if D >> h.eval_g(u[:i] + (s,) + u[i + 1 :]) & 1:
            return False
    return True


def _explain(h, P, X, D, s, u):
    nm = h.names
    p = h.eval_g(u)
    return (
        f"g({', '.join(nm[x] for x in u)}) = {nm[p]} lies in {h.fmt(P)} but not in {h.fmt(X)}; "
        f"with s = {nm[s]} no slot i has g(u_i, s, 1..) in P or g(u with u_i := s) in {h.fmt(D)}"
    )


def _classify(h, P, X, D, S, s, kind):
    cands = _candidates(h, S, s)
    first = None
    for c in cands:
        seen, u = refute(h, P, X, D, c)
        if u is None:
            return Classification(HOLDS if seen else VACUOUS, kind, c, None, tuple(cands))
        if first is None:
            first = Refutation(c, u, _explain(h, P, X, D, c, u))
    return Classification(FAILS, kind, first.s, first, tuple(cands))


# ---------------------------------------------------------------------------
# public deciders


def is_phi_delta_S_primary(h, P, phi, delta, S, s=None):
    """``s=None`` searches every s in S; otherwise s is fixed."""
    P, S = check_admissible(h, P, S)
    phi, delta = get_map(phi, REDUCTION), get_map(delta, EXPANSION)
    return _classify(h, P, phi.apply(h, P), delta.apply(h, P), S, s, "phi-delta-S-primary")


def is_delta_S_primary(h, P, delta, S, s=None):
    P, S = check_admissible(h, P, S)
    delta = get_map(delta, EXPANSION)
    return _classify(h, P, 0, delta.apply(h, P), S, s, "delta-S-primary")


def is_S_primary(h, P, S, s=None):
    P, S = check_admissible(h, P, S)
    return _classify(h, P, 0, I.radical_mask(h, P), S, s, "S-primary")


def is_weakly_S_primary(h, P, S, s=None):
    P, S = check_admissible(h, P, S)
    return _classify(h, P, 1 << h.zero, I.radical_mask(h, P), S, s, "weakly-S-primary")


def is_phi_S_primary(h, P, phi, S, s=None):
    P, S = check_admissible(h, P, S)
    phi = get_map(phi, REDUCTION)
    return _classify(h, P, phi.apply(h, P), I.radical_mask(h, P), S, s, "phi-S-primary")


def is_delta_primary(h, P, delta):
    P = I._m(P)
    I._require_proper(h, P)
    delta = get_map(delta, EXPANSION)
    return _classify(h, P, 0, delta.apply(h, P), 1 << h.one, h.one, "delta-primary")


def is_phi_delta_primary(h, P, phi, delta):
    P = I._m(P)
    I._require_proper(h, P)
    phi, delta = get_map(phi, REDUCTION), get_map(delta, EXPANSION)
    return _classify(h, P, phi.apply(h, P), delta.apply(h, P), 1 << h.one, h.one, "phi-delta-primary")


# ---------------------------------------------------------------------------
# strongly: the same implication over n-tuples of hyperideals


def _s_image(h, Q, s):
    return I.image_product(h, [Q, 1 << s] + [1 << h.one] * (h.n - 2))


def strong_refute(h, P, X, D, s):
    """Search n-tuples of hyperideals ``Q`` with ``g(Q)`` inside ``P`` and not
    inside ``X`` for which every slot fails both consequents.

    Returns ``(antecedent_met, refuting tuple of masks or None)``.
    """
    key = ("strong", P, X, D, s)
    try:
        return h.cache[key]
    except KeyError:
        pass
    L = I._enumerate_masks(h, I.DEFAULT_ENUM_CAP)
    sbit = 1 << s
    first_ok = {Q: is_subset(_s_image(h, Q, s), P) for Q in L}
    seen, bad = False, None
    for tup in combinations_with_replacement(L, h.n):
        img = I.image_product(h, list(tup))
        if not is_subset(img, P) or is_subset(img, X):
            continue
        seen = True
        ok = False
        for i, Q in enumerate(tup):
            if first_ok[Q]:
                ok = True
                break
            rest = list(tup[:i]) + [sbit] + list(tup[i + 1 :])
            if is_subset(I.image_product(h, rest), D):
                ok = True
                break
        if not ok:
            bad = tup
            break
    val = h.cache[key] = (seen, bad)
    return val


def strong_assoc(h, P, X, D, s):
    return strong_refute(h, P, X, D, s)[1] is None


def is_strongly_phi_delta_S_primary(h, P, phi, delta, S, s=None):
    """Strongly phi-delta-S-primary, with the antecedent read as
    ``g(P_1..P_n)`` contained in ``P`` but not in ``phi(P)`` (every product
    of hyperideals contains 0, which always lies in ``phi(P)``, so the
    literal set difference would make the class vacuous)."""
    if not hasattr(h, "f"):
        raise PreconditionError("strongly classes are only decidable on finite structures")
    P, S = check_admissible(h, P, S)
    phi, delta = get_map(phi, REDUCTION), get_map(delta, EXPANSION)
    X, D = phi.apply(h, P), delta.apply(h, P)
    cands = _candidates(h, S, s)
    first = None
    for c in cands:
        seen, tup = strong_refute(h, P, X, D, c)
        if tup is None:
            return Classification(HOLDS if seen else VACUOUS, "strongly-phi-delta-S-primary", c, None, tuple(cands))
        if first is None:
            detail = "hyperideals " + ", ".join(h.fmt(Q) for Q in tup)
            first = Refutation(c, tup, detail)
    return Classification(FAILS, "strongly-phi-delta-S-primary", first.s, first, tuple(cands))


CLASSES = {
    "phi-delta-S": is_phi_delta_S_primary,
    "delta-S": is_delta_S_primary,
    "S": is_S_primary,
    "weakly-S": is_weakly_S_primary,
    "phi-S": is_phi_S_primary,
    "delta": is_delta_primary,
    "phi-delta": is_phi_delta_primary,
}
