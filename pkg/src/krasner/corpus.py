"""The bundled corpus of small structures used by the theorem sweep."""
from functools import lru_cache
from importlib import resources
from itertools import combinations_with_replacement

import numpy as np

from . import ideals as I
from .analytic import Modular
from .constructions import direct_product, localize
from .core import FiniteHyperring, from_ring
from .docio import structure_from_doc


def hyper3():
    """The three-element (2,2)-hyperring {0, 1, u} with 1 + 1 = K and
    u + u = {0, u}, u * u = 0."""
    import json

    text = resources.files("krasner").joinpath("data/hyper3.json").read_text(encoding="utf-8")
    return structure_from_doc(json.loads(text))


def zk(k, m=2, n=2):
    name = f"Z{k}" if (m, n) == (2, 2) else f"Z{k}({m},{n})"

    def mul(t):
        acc = 1
        for x in t:
            acc = acc * x % k
        return acc

    h = from_ring(name, k, lambda t: sum(t) % k, mul, m, n, names=[str(i) for i in range(k)])
    h.modulus = k
    return h


def krasner_quotient(N, G, m=2, n=2):
    """Z_N / G for a subgroup G of units: the classes xG with
    f(x1G, ..., xmG) = {(x1 + x2 g2 + ... + xm gm) G} and classwise products."""
    G = sorted(set(int(x) % N for x in G))
    if 1 not in G or any(a * b % N not in G for a in G for b in G):
        raise ValueError(f"{G} is not a multiplicative subgroup mod {N}")
    cls_of = {}
    reps = []
    for x in range(N):
        if x not in cls_of:
            for gg in G:
                cls_of[x * gg % N] = len(reps)
            reps.append(x)
    k = len(reps)
    f = np.zeros((k,) * m, dtype=np.uint64)
    for t in np.ndindex(*(k,) * m):
        xs = [reps[i] for i in t]
        val = 0
        for gs in np.ndindex(*(len(G),) * (m - 1)):
            s = xs[0] + sum(xs[j + 1] * G[gs[j]] for j in range(m - 1))
            val |= 1 << cls_of[s % N]
        f[t] = val
    g = np.zeros((k,) * n, dtype=np.int64)
    for t in np.ndindex(*(k,) * n):
        acc = 1
        for i in t:
            acc = acc * reps[i] % N
        g[t] = cls_of[acc]
    names = ["0" if r == 0 else f"[{r}]" for r in reps]
    suffix = "" if (m, n) == (2, 2) else f"({m},{n})"
    return FiniteHyperring(m, n, f, g, cls_of[0], cls_of[1], names, f"Z{N}/{{{','.join(map(str, G))}}}{suffix}")


def base_members():
    out = [hyper3()]
    out += [zk(k) for k in (2, 3, 4, 6, 8)]
    out += [zk(4, 3, 3), zk(4, 2, 3), zk(6, 2, 3)]
    out += [krasner_quotient(5, [1, 4]), krasner_quotient(7, [1, 6]), krasner_quotient(8, [1, 7]),
            krasner_quotient(9, [1, 8]), krasner_quotient(7, [1, 2, 4])]
    for h in out:
        h.require_valid()
    return out


def products(members, max_factor=4):
    small = [h for h in members if h.size <= max_factor]
    out = []
    for a, b in combinations_with_replacement(small, 2):
        if (a.m, a.n) == (b.m, b.n):
            out.append(direct_product(a, b))
    return out


def localizations(members, max_mulset=3):
    """Fraction structures of each member at each multiplicative set of at
    most ``max_mulset`` elements, skipping the one-element collapses."""
    out = []
    for h in members:
        for S in I.enumerate_multiplicative_sets(h, max_mulset):
            if S >> h.zero & 1:
                continue
            F = localize(h, S)
            if F.ring.size > 1:
                out.append(F)
    return out


@lru_cache(maxsize=None)
def _corpus():
    base = base_members()
    prods = products(base)
    fracs = localizations(base)
    return tuple(base), tuple(prods), tuple(fracs)


def corpus(max_size=None, include_products=True, include_localizations=True):
    """Deterministically ordered finite corpus members. Localizations are
    returned as their fraction rings."""
    base, prods, fracs = _corpus()
    out = list(base)
    if include_products:
        out += prods
    if include_localizations:
        out += [F.ring for F in fracs]
    if max_size is not None:
        out = [h for h in out if h.size <= max_size]
    return out


def fraction_structures(max_size=None):
    fr = list(_corpus()[2])
    return [F for F in fr if max_size is None or F.base.size <= max_size]


def product_structures(max_factor=None):
    pr = list(_corpus()[1])
    return [p for p in pr if max_factor is None or max(x.size for x in p.factors) <= max_factor]


def witness_members():
    return [Modular(2, 8, 2, 2), Modular(5, 25, 4, 3)]
