"""Hyperideals of a finite Krasner hyperring and their arithmetic.

Internally a hyperideal is a bitmask; the public functions accept either a
:class:`Hyperideal` or a raw mask and return :class:`Hyperideal` objects.
Expensive results (enumeration, primes, radicals) are memoised in
``h.cache``.
"""
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

import numpy as np

from . import kernels
from .core import InputError, PreconditionError, is_subset, mask_of, members, popcount

DEFAULT_ENUM_CAP = 64


@dataclass(frozen=True)
class Hyperideal:
    ring: object
    mask: int
    image: int = field(default=None, compare=False, repr=False)

    def __contains__(self, x):
        return bool(self.mask >> int(x) & 1)

    def __le__(self, other):
        return is_subset(self.mask, _m(other))

    def __lt__(self, other):
        o = _m(other)
        return self.mask != o and is_subset(self.mask, o)

    def __and__(self, other):
        return Hyperideal(self.ring, self.mask & _m(other))

    def __len__(self):
        return popcount(self.mask)

    def __iter__(self):
        return iter(members(self.mask))

    @property
    def is_proper(self):
        return self.mask != self.ring.full

    @property
    def image_was_ideal(self):
        """Whether the raw image set this ideal was generated from was
        already closed (``None`` if it was not built from an image)."""
        return None if self.image is None else self.image == self.mask

    @property
    def names(self):
        return self.ring.names_of(self.mask)

    def __str__(self):
        return self.ring.fmt(self.mask)


def _m(x):
    return x.mask if isinstance(x, Hyperideal) else int(x)


def _cached(h, key, fn):
    try:
        return h.cache[key]
    except KeyError:
        val = h.cache[key] = fn()
        return val


@dataclass(frozen=True)
class IdealCheck:
    ok: bool
    clause: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def is_hyperideal(h, X):
    """Check the three hyperideal clauses for subset ``X``.

    On failure the result names the clause and carries a witness tuple of
    element names.
    """
    X = _m(X)
    nm = h.names
    if not X >> h.zero & 1:
        return IdealCheck(False, "contains zero", (nm[h.zero],))
    mem = members(X)
    for x in mem:
        if not X >> int(h.neg[x]) & 1:
            return IdealCheck(False, "closed under negation", (nm[x],))
    if not is_subset(kernels.f_image(h.f, h.size, h.m, [X] * h.m), X):
        for t in combinations_with_replacement(mem, h.m):
            if not is_subset(int(h.F[t]), X):
                return IdealCheck(False, "closed under f", tuple(nm[i] for i in t))
    for x in mem:
        pm = int(h.principal_masks[x])
        if not is_subset(pm, X):
            a = members(pm & ~X)[0]
            for b in range(h.size):
                if h.g2(b, x) == a:
                    return IdealCheck(False, "absorbing", (nm[x], nm[b]))
    return IdealCheck(True)


def _closure(h, seed):
    return kernels.closure(h.f, h.size, h.m, h.neg, h.principal_masks, h.zero, seed)


def generated_hyperideal(h, X):
    """Least hyperideal containing ``X``."""
    return Hyperideal(h, _closure(h, _m(X)))


def principal(h, u):
    """The set g(K, u, 1^(n-2))."""
    return Hyperideal(h, int(h.principal_masks[int(u)]))


def ideal(h, X):
    """Wrap ``X`` as a :class:`Hyperideal`, refusing non-hyperideals."""
    chk = is_hyperideal(h, X)
    if not chk:
        raise InputError(f"{h.fmt(_m(X))} is not a hyperideal ({chk.clause}: {chk.witness})")
    return Hyperideal(h, _m(X))


def _enumerate_masks(h, cap):
    if h.size > cap:
        raise InputError(f"carrier of {h.name} has {h.size} elements, cap is {cap}")

    def build():
        h.require_valid()
        singles = [_closure(h, 1 << e) for e in range(h.size)]
        start = _closure(h, 0)
        seen = {start}
        queue = [start]
        while queue:
            cur = queue.pop()
            for e in range(h.size):
                if cur >> e & 1:
                    continue
                nxt = _closure(h, cur | singles[e])
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return sorted(seen, key=lambda x: (popcount(x), x))

    return _cached(h, "ideals", build)


def enumerate_hyperideals(h, cap=DEFAULT_ENUM_CAP):
    """All hyperideals sorted by (cardinality, bit pattern).

    Every hyperideal is a join of singleton-generated hyperideals, so the
    lattice is explored by joining one generator at a time from ``{0}``.
    """
    return [Hyperideal(h, x) for x in _enumerate_masks(h, cap)]


def enumerate_hyperideals_bruteforce(h):
    """Reference enumeration: test every subset. Exponential in |K|."""
    out = [X for X in range(1 << h.size) if is_hyperideal(h, X)]
    return sorted(out, key=lambda x: (popcount(x), x))


def proper_ideals(h):
    return [x for x in _enumerate_masks(h, DEFAULT_ENUM_CAP) if x != h.full]


# ---------------------------------------------------------------------------
# arithmetic


def colon(h, P, u):
    """(P : u) = {a : g(a, u, 1^(n-2)) in P}."""
    P = _m(P)
    col = h.G[(slice(None), int(u)) + (h.one,) * (h.n - 2)]
    return Hyperideal(h, mask_of(np.flatnonzero((P >> col.astype(object)) & 1)))


def colon_mask(h, P, u):
    key = ("colon", P, u)
    try:
        return h.cache[key]
    except KeyError:
        val = h.cache[key] = colon(h, P, u).mask
        return val


def colon_ideal(h, P, Q):
    """(P : Q) = {a : g(a, Q, 1^(n-2)) subset of P}."""
    P, Q = _m(P), _m(Q)
    out = h.full
    for q in members(Q):
        out &= colon_mask(h, P, q)
    return Hyperideal(h, out)


def ideal_sum(h, ideals):
    masks = [_m(x) for x in ideals]
    if len(masks) != h.m:
        raise InputError(f"sum takes {h.m} hyperideals")
    img = kernels.f_image(h.f, h.size, h.m, masks)
    return Hyperideal(h, _closure(h, img), img)


def ideal_product(h, ideals):
    """Hyperideal generated by the elementwise image g(P_1, ..., P_n)."""
    masks = [_m(x) for x in ideals]
    if len(masks) != h.n:
        raise InputError(f"product takes {h.n} hyperideals")
    img = image_product(h, masks)
    return Hyperideal(h, _closure(h, img), img)


def image_product(h, masks):
    key = ("gimg", tuple(sorted(masks)))
    try:
        return h.cache[key]
    except KeyError:
        val = h.cache[key] = kernels.g_image(h.g, h.size, h.n, masks)
        return val


def ideal_power(h, P, k):
    """P^[k] for k = x(n-1)+1: hyperideal generated by all x-fold products
    of k elements of P."""
    n = h.n
    if k < 1 or (k - 1) % (n - 1):
        raise InputError(f"power exponent {k} is not of the form x({n}-1)+1")
    P = _m(P)

    def build():
        img = P
        for _ in range((k - 1) // (n - 1)):
            img = image_product(h, [img] + [P] * (n - 1))
        return img, _closure(h, img)

    img, gen = _cached(h, ("pow", P, k), build)
    return Hyperideal(h, gen, img)


def power_chain(h, P):
    """Masks of P^[1], P^[n], P^[2n-1], ... until the chain stabilises."""
    P = _m(P)

    def build():
        chain = [P]
        k = 1
        while True:
            k += h.n - 1
            nxt = ideal_power(h, P, k).mask
            if nxt == chain[-1]:
                return chain
            chain.append(nxt)

    return _cached(h, ("chain", P), build)


# ---------------------------------------------------------------------------
# prime, primary, maximal


def _require_proper(h, P):
    if P == h.full:
        raise PreconditionError(f"{h.fmt(P)} is not a proper hyperideal of {h.name}")


def _bool_of(h, mask):
    return ((mask >> np.arange(h.size, dtype=object)) & 1).astype(bool)


def _refute(h, P, excl, D, s, c1=None):
    """Shared tuple search; see :func:`kernels.refute_tuples`."""
    in_p = _bool_of(h, P)
    if c1 is None:
        c1 = in_p[h.G[(slice(None), s) + (h.one,) * (h.n - 2)]]
    return kernels.refute_tuples(h.g, h.size, h.n, in_p, _bool_of(h, excl), _bool_of(h, D), c1, s)


def unflatten(h, idx):
    return tuple(int(x) for x in np.unravel_index(idx, (h.size,) * h.n))


def prime_witness(h, P):
    """First n-tuple with product in P and no factor in P, or None."""
    P = _m(P)
    _require_proper(h, P)
    _, idx = _refute(h, P, 0, 0, h.one)
    return None if idx < 0 else unflatten(h, idx)


def is_prime_elementwise(h, P):
    return prime_witness(h, P) is None


def is_prime_by_ideals(h, P):
    """g(P_1..P_n) within P forces some P_i within P, over all hyperideals."""
    P = _m(P)
    _require_proper(h, P)
    ideals = _enumerate_masks(h, DEFAULT_ENUM_CAP)
    for tup in combinations_with_replacement(ideals, h.n):
        if is_subset(image_product(h, list(tup)), P) and not any(is_subset(x, P) for x in tup):
            return False
    return True


def is_prime(h, P):
    """n-ary prime test; the elementwise and hyperideal-tuple forms are both
    evaluated and must agree."""
    P = _m(P)

    def build():
        a = is_prime_elementwise(h, P)
        b = is_prime_by_ideals(h, P)
        if a != b:
            raise AssertionError(f"prime forms disagree on {h.fmt(P)} in {h.name}")
        return a

    _require_proper(h, P)
    return _cached(h, ("prime", P), build)


def primes(h):
    return _cached(h, "primes", lambda: [P for P in proper_ideals(h) if is_prime(h, P)])


def is_primary(h, P):
    """g(u) in P implies u_i in P or g(u with u_i := 1) in rad(P)."""
    P = _m(P)
    _require_proper(h, P)
    _, idx = _refute(h, P, 0, radical_mask(h, P), h.one)
    return idx < 0


def is_maximal(h, P):
    P = _m(P)
    _require_proper(h, P)
    return not any(P != Q and is_subset(P, Q) for Q in proper_ideals(h))


def maximals(h):
    return _cached(h, "maximals", lambda: [P for P in proper_ideals(h) if is_maximal(h, P)])


def is_invertible(h, u):
    return any(h.g2(u, v) == h.one for v in range(h.size))


def is_hyperintegral_domain(h):
    zero = 1 << h.zero
    c1 = np.zeros(h.size, dtype=bool)
    c1[h.zero] = True
    _, idx = _refute(h, zero, 0, 0, h.one, c1=c1)
    return idx < 0


# ---------------------------------------------------------------------------
# radicals


def radical_by_primes(h, P):
    """Intersection of the prime hyperideals containing P (K if none)."""
    P = _m(P)
    out = h.full
    for Q in primes(h):
        if is_subset(P, Q):
            out &= Q
    return Hyperideal(h, out)


def element_powers(h, u):
    """Powers of u in the two admissible shapes: g(u^(r), 1^(n-r)) for
    r <= n and g_(x)(u^(x(n-1)+1)), the latter until it cycles."""
    n = h.n
    out = [h.eval_g((u,) * r + (h.one,) * (n - r)) for r in range(1, n + 1)]
    seen = set()
    acc = out[-1]  # x = 1
    while acc not in seen:
        seen.add(acc)
        out.append(acc)
        acc = h.eval_g((acc,) + (u,) * (n - 1))
    return out


def radical_by_powers(h, P):
    """Elements having some power in P."""
    P = _m(P)
    out = 0
    for u in range(h.size):
        if any(P >> v & 1 for v in element_powers(h, u)):
            out |= 1 << u
    return Hyperideal(h, out)


def radical_mask(h, P):
    P = _m(P)
    return _cached(h, ("rad", P), lambda: radical_by_primes(h, P).mask)


def radical(h, P):
    return Hyperideal(h, radical_mask(h, P))


# ---------------------------------------------------------------------------
# multiplicative sets


def is_multiplicative(h, S):
    S = _m(S)
    if S == 0:
        return False
    return is_subset(image_product(h, [S] * h.n), S)


def enumerate_multiplicative_sets(h, size_cap):
    """All multiplicative subsets with at most ``size_cap`` elements, in
    (cardinality, bit pattern) order."""

    def build():
        out = []
        for r in range(1, min(size_cap, h.size) + 1):
            for combo in combinations(range(h.size), r):
                S = mask_of(combo)
                if is_multiplicative(h, S):
                    out.append(S)
        return sorted(out, key=lambda x: (popcount(x), x))

    return _cached(h, ("mulsets", size_cap), build)
