"""Deliberately naive reference implementations used as test oracles.

Everything here iterates over element tuples with itertools and reads the
tables through ``eval_f``/``eval_g`` only.
"""
from itertools import product


def elems(mask):
    return [i for i in range(64) if mask >> i & 1]


def is_ideal(h, X):
    xs = elems(X)
    if h.zero not in xs:
        return False
    for a in xs:
        if not any(h.zero in elems(h.eval_f((a, b) + (h.zero,) * (h.m - 2))) and b in xs for b in range(h.size)):
            return False
    for t in product(xs, repeat=h.m):
        if h.eval_f(t) & ~X:
            return False
    for a in xs:
        for rest in product(range(h.size), repeat=h.n - 1):
            if h.eval_g((a,) + rest) not in xs:
                return False
    return True


def all_ideals(h):
    return sorted(X for X in range(1, 1 << h.size) if is_ideal(h, X))


def is_prime(h, P):
    if P == h.full:
        return False
    for t in product(range(h.size), repeat=h.n):
        if P >> h.eval_g(t) & 1 and not any(P >> x & 1 for x in t):
            return False
    return True


def radical(h, P):
    """Elements x such that some iterated power g(x, ..., x) lands in P."""
    out = 0
    for x in range(h.size):
        seen, y = set(), x
        while y not in seen:
            seen.add(y)
            y = h.eval_g((y,) + (x,) * (h.n - 1))
        # also g(x^(r), 1^(n-r)) for r < n
        seen |= {h.eval_g((x,) * r + (h.one,) * (h.n - r)) for r in range(1, h.n + 1)}
        if any(P >> v & 1 for v in seen):
            out |= 1 << x
    return out


def colon(h, P, u):
    return sum(1 << a for a in range(h.size) if P >> h.eval_g((a, u) + (h.one,) * (h.n - 2)) & 1)


def is_mulset(h, S):
    xs = elems(S)
    return bool(xs) and all(S >> h.eval_g(t) & 1 for t in product(xs, repeat=h.n))


def refutes(h, P, X, D, s, u):
    """Does tuple ``u`` break the elementwise class (X = phi(P), D = delta(P))?"""
    p = h.eval_g(u)
    if not (P >> p & 1) or X >> p & 1:
        return False
    for i in range(h.n):
        if P >> h.eval_g((u[i], s) + (h.one,) * (h.n - 2)) & 1:
            return False
        if D >> h.eval_g(u[:i] + (s,) + u[i + 1 :]) & 1:
            return False
    return True


def classify(h, P, X, D, S):
    """'holds', 'vacuous' or 'fails' by exhaustive search (s searched over S)."""
    tuples = list(product(range(h.size), repeat=h.n))
    met = any(P >> h.eval_g(u) & 1 and not X >> h.eval_g(u) & 1 for u in tuples)
    for s in elems(S):
        if not any(refutes(h, P, X, D, s, u) for u in tuples):
            return "holds" if met else "vacuous"
    return "fails"
