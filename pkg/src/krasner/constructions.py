"""Direct products, hyperrings of fractions and homomorphisms."""
from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from . import ideals as I
from .core import ConstructionError, FiniteHyperring, InputError, MAX_SIZE, is_subset, mask_of, members
from .maps import IdealMap, get_map

# ---------------------------------------------------------------------------
# direct products


class ProductStructure(FiniteHyperring):
    """K1 x K2 with componentwise operations. Element ``(i, j)`` has index
    ``i * |K2| + j``."""

    def __init__(self, h1, h2, name=None):
        if (h1.m, h1.n) != (h2.m, h2.n):
            raise InputError(f"arity mismatch: ({h1.m},{h1.n}) vs ({h2.m},{h2.n})")
        k1, k2 = h1.size, h2.size
        if k1 * k2 > MAX_SIZE:
            raise InputError(f"product carrier {k1 * k2} exceeds {MAX_SIZE}")
        m, n = h1.m, h1.n
        self.factors = (h1, h2)
        idx = np.indices((k1, k2) * m).reshape(2 * m, -1)
        a, b = idx[0::2], idx[1::2]
        f1 = h1.F[tuple(a)].astype(object)
        f2 = h2.F[tuple(b)].astype(object)
        f = np.zeros(f1.shape, dtype=object)
        for x in range(k1):
            f += ((f1 >> x) & 1) * (f2 << (x * k2))
        f = f.astype(np.uint64).reshape((k1 * k2,) * m)
        idx = np.indices((k1, k2) * n).reshape(2 * n, -1)
        g = (h1.G[tuple(idx[0::2])] * k2 + h2.G[tuple(idx[1::2])]).reshape((k1 * k2,) * n)
        names = [f"({x},{y})" for x in h1.names for y in h2.names]
        super().__init__(
            m, n, f, g, h1.zero * k2 + h2.zero, h1.one * k2 + h2.one, names, name or f"{h1.name}x{h2.name}"
        )

    def pair(self, x):
        return divmod(int(x), self.factors[1].size)

    def combine(self, A, B):
        """Mask of A x B for factor masks A and B."""
        k2 = self.factors[1].size
        return mask_of(i * k2 + j for i in members(A) for j in members(B))

    def split(self, X):
        """(A, B) when X = A x B, else None."""
        k2 = self.factors[1].size
        A = mask_of({x // k2 for x in members(X)})
        B = mask_of({x % k2 for x in members(X)})
        return (A, B) if self.combine(A, B) == X else None


def direct_product(h1, h2, name=None):
    p = ProductStructure(h1, h2, name)
    p.require_valid()
    return p


def product_ideal_map(p, map1, map2):
    """The factorwise map on product hyperideals A x B."""
    map1, map2 = get_map(map1), get_map(map2)
    if map1.kind != map2.kind:
        raise InputError("product map needs two maps of the same kind")
    h1, h2 = p.factors

    def fn(h, X):
        ab = p.split(X)
        if ab is None:
            raise ConstructionError(f"{p.fmt(X)} is not a product of factor hyperideals")
        return p.combine(map1.apply(h1, ab[0]), map2.apply(h2, ab[1]))

    return IdealMap(f"({map1.id},{map2.id})", map1.kind, fn)


# ---------------------------------------------------------------------------
# hyperrings of fractions


def denominator_monoid(h, S):
    """Closure of S together with 1 under the binary product g(a, b, 1..)."""
    D = I._m(S) | 1 << h.one
    while True:
        new = D
        for a in members(D):
            for b in members(D):
                new |= 1 << h.g2(a, b)
        if new == D:
            return D
        D = new


class FractionStructure:
    """S^-1 K built from pairs (a, t) with t in the denominator monoid.

    ``ring`` is the finite hyperring on equivalence classes; ``canon[a]`` is
    the class of a/1.
    """

    def __init__(self, h, S, name=None):
        h.require_valid()
        S = I._m(S)
        if not I.is_multiplicative(h, S):
            raise InputError(f"{h.fmt(S)} is not multiplicative in {h.name}")
        self.base, self.S = h, S
        self.D = denominator_monoid(h, S)
        dens = sorted(members(self.D), key=lambda t: (t != h.one, t))
        self.dens = dens
        pairs = [(a, t) for t in dens for a in range(h.size)]
        self.pairs = pairs
        npairs = len(pairs)
        pidx = {p: i for i, p in enumerate(pairs)}
        k = h.size
        pa = np.array([a for a, _ in pairs], dtype=np.int64)
        pt = np.array([s for _, s in pairs], dtype=np.int64)
        G2 = h.G[(slice(None), slice(None)) + (h.one,) * (h.n - 2)]
        pad = (h.zero,) * (h.m - 2)

        # witnessed-zero relation: (a,s) ~ (b,t) iff some u in D kills some
        # element of f(g(a,t), -g(b,s), 0, ...)
        killed = mask_of(x for x in range(k) if any(G2[u, x] == h.zero for u in dens))
        first = G2[pa[:, None], pt[None, :]]
        second = h.neg[G2[pa[None, :], pt[:, None]]]
        diff = h.F[(first, second) + pad]
        R = (diff & np.uint64(killed)) != 0
        self._check_equivalence(R)
        cls = -np.ones(npairs, dtype=np.int64)
        reps = []
        for i in range(npairs):
            if cls[i] < 0:
                cls[R[i]] = len(reps)
                reps.append(i)
        if len(reps) > MAX_SIZE:
            raise ConstructionError(f"{len(reps)} classes exceed {MAX_SIZE}")
        self.cls = cls
        self.reps = reps
        kc = len(reps)
        self.pidx = pidx
        # CL[c, t]: class of c/t, -1 when t is not a denominator
        CL = -np.ones((k, k), dtype=np.int64)
        for (a, s), i in pidx.items():
            CL[a, s] = cls[i]

        def cl(a, t):
            return int(CL[a, t])

        def fold(ts):
            acc = ts[0]
            for x in ts[1:]:
                acc = G2[acc, x]
            return acc

        def induced(arity, value, what):
            """Table on classes, checked for independence of representatives.
            The first slot is looped to bound memory."""
            table = -np.ones(kc**arity, dtype=np.int64)
            rest = np.indices((npairs,) * (arity - 1)).reshape(arity - 1, -1)
            weights = kc ** np.arange(arity - 1, -1, -1)
            for p0 in range(npairs):
                idx = [np.full(rest.shape[1], p0, dtype=np.int64)] + list(rest)
                val = value(idx)
                key = sum(cls[ix] * w for ix, w in zip(idx, weights))
                prev = table[key]
                clash = (prev >= 0) & (prev != val)
                table[key] = val
                clash |= table[key] != val
                if clash.any():
                    j = int(np.flatnonzero(clash)[0])
                    raise ConstructionError(
                        f"induced {what} ill-defined at {self._pairs_str([int(ix[j]) for ix in idx])}")
            return table.reshape((kc,) * arity)

        n, m = h.n, h.m

        def g_value(idx):
            num = h.G[tuple(pa[ix] for ix in idx)]
            den = fold([pt[ix] for ix in idx])
            out = CL[num, den]
            if (out < 0).any():
                raise ConstructionError("denominator monoid is not closed")
            return out

        def f_value(idx):
            ds = [pt[ix] for ix in idx]
            nums = []
            for j, ix in enumerate(idx):
                others = ds[:j] + ds[j + 1 :]
                nums.append(G2[pa[ix], fold(others)])
            den = fold(ds)
            mask = h.F[tuple(nums)]
            out = np.zeros(mask.shape, dtype=np.uint64)
            for c in range(k):
                hit = ((mask >> np.uint64(c)) & np.uint64(1)).astype(bool)
                if hit.any():
                    out[hit] |= np.uint64(1) << CL[c, den[hit]].astype(np.uint64)
            return out.astype(np.int64)

        g = induced(n, g_value, "product")
        f = induced(m, f_value, "hyperaddition").astype(np.uint64)
        names = [self._pair_name(pairs[r]) for r in reps]
        self.ring = FiniteHyperring(m, n, f, g, cl(h.zero, h.one), cl(h.one, h.one), names,
                                    name or f"{h.name}[{','.join(h.names_of(S))}]^-1")
        self.ring.require_valid()
        self.canon = np.array([cl(a, h.one) for a in range(h.size)], dtype=np.int64)

    def _check_equivalence(self, R):
        if not R.diagonal().all():
            i = int(np.flatnonzero(~R.diagonal())[0])
            raise ConstructionError(f"relation not reflexive at {self._pairs_str([i])}")
        if not (R == R.T).all():
            i, j = np.argwhere(R != R.T)[0]
            raise ConstructionError(f"relation not symmetric at {self._pairs_str([i, j])}")
        Ri = R.astype(np.int64)
        comp = (Ri @ Ri) > 0
        if (comp & ~R).any():
            i, j = np.argwhere(comp & ~R)[0]
            k = int(np.flatnonzero(R[i] & R[:, j])[0])
            raise ConstructionError(f"relation not transitive: {self._pairs_str([i, k, j])}")

    def _pair_name(self, p):
        nm = self.base.names
        return f"{nm[p[0]]}/{nm[p[1]]}"

    def _pairs_str(self, idxs):
        return ", ".join(self._pair_name(self.pairs[int(i)]) for i in idxs)

    def fraction(self, a, t):
        return int(self.cls[self.pidx[(int(a), int(t))]])

    def extend_ideal(self, P):
        """S^-1 P = {a/t : a in P, t in D}."""
        P = I._m(P)
        return mask_of({self.fraction(a, t) for a in members(P) for t in self.dens})

    def contract_ideal(self, J):
        """Preimage of J under a -> a/1."""
        J = I._m(J)
        return mask_of(a for a in range(self.base.size) if J >> int(self.canon[a]) & 1)

    def localized_map(self, fn):
        """phi_S(S^-1 I) = S^-1 phi(I). Values are only defined where every
        hyperideal I with the same extension gives the same answer; other
        arguments map to ``None`` via :meth:`localized_value`."""
        fn = get_map(fn)
        base = self.base

        def value(J):
            vals = {
                self.extend_ideal(fn.apply(base, P))
                for P in I._enumerate_masks(base, I.DEFAULT_ENUM_CAP)
                if self.extend_ideal(P) == J
            }
            return vals.pop() if len(vals) == 1 else None

        def apply(h, J):
            v = value(J)
            if v is None:
                raise ConstructionError(f"{fn.id}_S is not well defined at {self.ring.fmt(J)}")
            return v

        return IdealMap(f"{fn.id}_S", fn.kind, apply)

    def localized_value(self, fn, J):
        try:
            return self.localized_map(fn).apply(self.ring, J)
        except ConstructionError:
            return None

    def canonical_map(self):
        return Homomorphism(self.base, self.ring, self.canon)


def localize(h, S, name=None):
    return FractionStructure(h, S, name)


def union_of_colons(h, P, S):
    out = 0
    for t in members(I._m(S)):
        out |= I.colon_mask(h, I._m(P), t)
    return out


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class HomReport:
    violations: list

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


class Homomorphism:
    def __init__(self, source, target, mapping):
        self.source, self.target = source, target
        self.map = np.asarray(mapping, dtype=np.int64)
        if self.map.shape != (source.size,) or np.any(self.map < 0) or np.any(self.map >= target.size):
            raise InputError("element map must send every source element into the target")

    def image_mask(self, X):
        return mask_of({int(self.map[x]) for x in members(I._m(X))})

    @property
    def is_surjective(self):
        return len(set(self.map.tolist())) == self.target.size

    @property
    def is_zero(self):
        return bool(np.all(self.map == self.target.zero))


def check_homomorphism(k):
    s, t = k.source, k.target
    out = []
    if k.map[s.zero] != t.zero:
        out.append(("zero", s.names[s.zero]))
    if k.map[s.one] != t.one:
        out.append(("one", s.names[s.one]))
    for tup in iproduct(range(s.size), repeat=s.m):
        img = k.image_mask(int(s.F[tup]))
        want = int(t.F[tuple(int(k.map[x]) for x in tup)])
        if img != want:
            out.append(("f", tuple(s.names[x] for x in tup)))
            break
    for tup in iproduct(range(s.size), repeat=s.n):
        if k.map[s.G[tup]] != t.G[tuple(int(k.map[x]) for x in tup)]:
            out.append(("g", tuple(s.names[x] for x in tup)))
            break
    return HomReport(out)


def preimage(k, P2):
    P2 = I._m(P2)
    out = mask_of(a for a in range(k.source.size) if P2 >> int(k.map[a]) & 1)
    if not I.is_hyperideal(k.source, out):
        raise ConstructionError("preimage is not a hyperideal; map is not a homomorphism")
    return I.Hyperideal(k.source, out)


def check_map_compatibility(k, phi, psi, delta, gamma):
    """For every target hyperideal P2, whether phi(k^-1 P2) = k^-1 psi(P2) and
    delta(k^-1 P2) = k^-1 gamma(P2). Returns a list of (P2, phi_ok, delta_ok)."""
    phi, psi, delta, gamma = (get_map(x) for x in (phi, psi, delta, gamma))
    rows = []
    for P2 in I._enumerate_masks(k.target, I.DEFAULT_ENUM_CAP):
        pre = preimage(k, P2).mask
        a = phi.apply(k.source, pre) == preimage(k, psi.apply(k.target, P2)).mask
        b = delta.apply(k.source, pre) == preimage(k, gamma.apply(k.target, P2)).mask
        rows.append((P2, a, b))
    return rows


def is_compatible(k, phi, psi, delta, gamma):
    return all(a and b for _, a, b in check_map_compatibility(k, phi, psi, delta, gamma))


def projection(p, which=0):
    k2 = p.factors[1].size
    mp = [x // k2 if which == 0 else x % k2 for x in range(p.size)]
    return Homomorphism(p, p.factors[which], mp)


def identity(h):
    return Homomorphism(h, h, np.arange(h.size))

