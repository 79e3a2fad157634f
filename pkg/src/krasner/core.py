"""Finite commutative Krasner (m, n)-hyperrings as explicit tables.

Subsets of a carrier are plain Python ints used as bit fields: bit ``i`` is
set iff element ``i`` belongs to the subset. Element ``i`` is the ``i``-th
entry of :attr:`FiniteHyperring.names`.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels

MAX_SIZE = 64


class KrasnerError(Exception):
    """Base class for all errors raised by this package."""


class InputError(KrasnerError, ValueError):
    """Malformed input: bad table shape, unknown name, wrong arity."""


class AxiomError(KrasnerError):
    """A structure failed validation."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class PreconditionError(KrasnerError, ValueError):
    """An operation was called outside its domain (e.g. P = K for prime)."""


class ConstructionError(KrasnerError):
    """A derived structure could not be built consistently."""


# ---------------------------------------------------------------------------
# bit-field helpers


def members(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    mask = int(mask)
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        out.append(i)
        mask ^= low
    return out


def mask_of(indices):
    out = 0
    for i in indices:
        out |= 1 << int(i)
    return out


def popcount(mask):
    return int(mask).bit_count()


def is_subset(a, b):
    return a & ~b == 0


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(str(x) for x in self.witness)
        out = f"{self.axiom}: ({w})"
        return f"{out} {self.detail}" if self.detail else out


@dataclass
class ValidationReport:
    name: str
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def axioms(self):
        return sorted({v.axiom for v in self.violations})

    def __str__(self):
        if self.ok:
            return f"{self.name}: ok"
        lines = [f"{self.name}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


class FiniteHyperring:
    """A finite commutative Krasner (m, n)-hyperring given by tables.

    ``f`` is an m-dimensional array of bitmasks (the hyperaddition) and
    ``g`` an n-dimensional array of element indices (the multiplication).
    Construction checks only table shape and ranges; call :func:`validate`
    (or :meth:`require_valid`) for the axioms.
    """

    def __init__(self, m, n, f, g, zero, one, names=None, name="K"):
        m, n = int(m), int(n)
        if m < 2 or n < 2:
            raise InputError(f"arities must be >= 2, got m={m}, n={n}")
        f = np.asarray(f)
        g = np.asarray(g)
        if f.ndim != m or g.ndim != n:
            raise InputError(f"table ranks ({f.ndim}, {g.ndim}) do not match arities ({m}, {n})")
        k = f.shape[0]
        if k < 1 or k > MAX_SIZE:
            raise InputError(f"carrier size {k} outside 1..{MAX_SIZE}")
        if f.shape != (k,) * m or g.shape != (k,) * n:
            raise InputError("tables are not total on the carrier")
        if np.any(g < 0) or np.any(g >= k):
            raise InputError("multiplication table value out of range")
        f = f.astype(np.uint64)
        if k < 64 and np.any(f >> np.uint64(k)):
            raise InputError("hyperaddition table value out of range")
        if not (0 <= zero < k and 0 <= one < k):
            raise InputError("zero/one index out of range")
        if names is None:
            names = tuple(f"a{i}" for i in range(k))
        names = tuple(str(x) for x in names)
        if len(names) != k or len(set(names)) != k:
            raise InputError("element names must be distinct and one per element")
        self.m, self.n, self.size = m, n, k
        self.f = np.ascontiguousarray(f).reshape(-1)
        self.g = np.ascontiguousarray(g, dtype=np.int64).reshape(-1)
        self.zero, self.one = int(zero), int(one)
        self.names = names
        self.name = name
        self._index = {x: i for i, x in enumerate(names)}
        self._valid = None
        self.cache = {}

    def __repr__(self):
        return f"<FiniteHyperring {self.name} (m={self.m}, n={self.n}, |K|={self.size})>"

    # -- naming ---------------------------------------------------------
    @property
    def full(self):
        return (1 << self.size) - 1

    def index(self, name):
        try:
            return self._index[str(name)]
        except KeyError:
            raise InputError(f"unknown element {name!r} in {self.name}") from None

    def subset(self, names):
        return mask_of(self.index(x) for x in names)

    def names_of(self, mask):
        return [self.names[i] for i in members(mask)]

    def fmt(self, mask):
        return "{" + ", ".join(self.names_of(mask)) + "}"

    # -- tables ---------------------------------------------------------
    @cached_property
    def F(self):
        return self.f.reshape((self.size,) * self.m)

    @cached_property
    def G(self):
        return self.g.reshape((self.size,) * self.n)

    def _check(self, args, arity):
        if len(args) != arity:
            raise InputError(f"expected {arity} arguments, got {len(args)}")
        for a in args:
            if not 0 <= a < self.size:
                raise InputError(f"element index {a} out of range")

    def eval_f(self, args):
        """Hypervalue ``f(args)`` as a bitmask."""
        args = tuple(int(a) for a in args)
        self._check(args, self.m)
        return int(self.F[args])

    def eval_f_subsets(self, masks):
        if len(masks) != self.m:
            raise InputError(f"expected {self.m} subsets, got {len(masks)}")
        if any(x == 0 for x in masks):
            raise InputError("hyperoperation applied to an empty subset")
        return kernels.f_image(self.f, self.size, self.m, masks)

    def eval_g(self, args):
        args = tuple(int(a) for a in args)
        self._check(args, self.n)
        return int(self.G[args])

    def eval_g_subsets(self, masks):
        if len(masks) != self.n:
            raise InputError(f"expected {self.n} subsets, got {len(masks)}")
        if any(x == 0 for x in masks):
            raise InputError("operation applied to an empty subset")
        return kernels.g_image(self.g, self.size, self.n, masks)

    def eval_g_iterated(self, x, args):
        """Left-nested x-fold product of exactly x(n-1)+1 arguments."""
        if x < 1 or len(args) != x * (self.n - 1) + 1:
            raise InputError(f"g_({x}) needs {x * (self.n - 1) + 1} arguments, got {len(args)}")
        acc = self.eval_g(args[: self.n])
        for j in range(self.n, len(args), self.n - 1):
            acc = self.eval_g((acc,) + tuple(args[j : j + self.n - 1]))
        return acc

    def product(self, xs):
        """Product of any number of elements, padded with the identity."""
        xs = [int(a) for a in xs]
        if not xs:
            return self.one
        n = self.n
        x = max(1, -(-(len(xs) - 1) // (n - 1)))
        xs += [self.one] * (x * (n - 1) + 1 - len(xs))
        return self.eval_g_iterated(x, xs)

    def g2(self, a, b):
        """``g(a, b, 1^(n-2))``."""
        return int(self.G[(a, b) + (self.one,) * (self.n - 2)])

    def zero_args(self, count):
        return (self.zero,) * count

    # -- derived data ----------------------------------------------------
    @cached_property
    def neg_candidates(self):
        k = self.size
        zbit = np.uint64(1) << np.uint64(self.zero)
        pad = (self.zero,) * (self.m - 2)
        out = []
        for u in range(k):
            out.append([v for v in range(k) if self.F[(u, v) + pad] & zbit])
        return out

    @cached_property
    def neg(self):
        """Negation map; -1 where the inverse is missing or not unique."""
        return np.array([c[0] if len(c) == 1 else -1 for c in self.neg_candidates], dtype=np.int64)

    @cached_property
    def principal_masks(self):
        """``principal_masks[u]`` is the bitmask of g(K, u, 1^(n-2))."""
        k = self.size
        out = np.zeros(k, dtype=np.uint64)
        for u in range(k):
            col = self.G[(slice(None), u) + (self.one,) * (self.n - 2)]
            out[u] = np.uint64(mask_of(np.unique(col)))
        return out

    def require_valid(self):
        if self._valid is None:
            self._valid = validate(self)
        if not self._valid.ok:
            raise AxiomError(self._valid)
        return self

    @property
    def is_validated(self):
        return self._valid is not None and self._valid.ok


# ---------------------------------------------------------------------------
# validation


def validate(h):
    """Check every axiom of a commutative Krasner (m, n)-hyperring.

    Returns a :class:`ValidationReport` listing, per violated axiom, the
    first witness tuple found (as element names).
    """
    k, m, n = h.size, h.m, h.n
    nm = h.names
    report = ValidationReport(h.name)
    add = report.violations.append
    F, G = h.F, h.G

    empty = np.argwhere(F == 0)
    if empty.size:
        add(Violation("f nonempty", tuple(nm[i] for i in empty[0])))

    for axis in range(m - 1):
        perm = list(range(m))
        perm[axis], perm[axis + 1] = perm[axis + 1], perm[axis]
        bad = np.argwhere(F != F.transpose(perm))
        if bad.size:
            add(Violation("f commutative", tuple(nm[i] for i in bad[0])))
            break

    pad = h.zero_args(m - 1)
    for u in range(k):
        if int(F[(u,) + pad]) != 1 << u:
            add(Violation("zero scalar neutral", (nm[u],) + tuple(nm[i] for i in pad),
                          f"gives {h.fmt(int(F[(u,) + pad]))}"))
            break

    for u, cands in enumerate(h.neg_candidates):
        if len(cands) != 1:
            add(Violation("unique inverse", (nm[u],),
                          f"{len(cands)} elements v with 0 in f(u, v, 0...)"))
            break

    rev = _reversibility_witness(h)
    if rev is not None:
        add(rev)

    dig, placement = kernels.f_assoc_violation(h.f, k, m)
    if placement >= 0:
        add(Violation("f associative", tuple(nm[i] for i in dig),
                      f"bracket at position {placement} differs"))

    dig, placement = kernels.g_assoc_violation(h.g, k, n)
    if placement >= 0:
        add(Violation("g associative", tuple(nm[i] for i in dig),
                      f"bracket at position {placement} differs"))

    for axis in range(n - 1):
        perm = list(range(n))
        perm[axis], perm[axis + 1] = perm[axis + 1], perm[axis]
        bad = np.argwhere(G != G.transpose(perm))
        if bad.size:
            add(Violation("g commutative", tuple(nm[i] for i in bad[0])))
            break

    dig, slot = kernels.distrib_violation(h.f, h.g, k, m, n)
    if slot >= 0:
        fixed, summands = dig[: n - 1], dig[n - 1:]
        add(Violation("distributivity", tuple(nm[i] for i in dig),
                      f"slot {slot}, factors {[nm[i] for i in fixed]}, summands {[nm[i] for i in summands]}"))

    for slot in range(n):
        sl = [slice(None)] * n
        sl[slot] = h.zero
        bad = np.argwhere(G[tuple(sl)] != h.zero)
        if bad.size:
            w = list(bad[0])
            w.insert(slot, h.zero)
            add(Violation("zero absorbing", tuple(nm[i] for i in w)))
            break

    ones = (h.one,) * (n - 1)
    for u in range(k):
        if G[(u,) + ones] != u:
            add(Violation("scalar identity", (nm[u],) + tuple(nm[i] for i in ones),
                          f"gives {nm[int(G[(u,) + ones])]}"))
            break

    h._valid = report
    return report


def _reversibility_witness(h):
    """u in f(v_1..v_m) must imply v_i in f(u, -v_1, .., ^v_i, .., -v_m)."""
    k, m = h.size, h.m
    neg = h.neg
    if np.any(neg < 0):
        return None  # reported as a unique-inverse failure instead
    F = h.F
    tuples = np.array(np.unravel_index(np.arange(k**m), (k,) * m))
    vals = F[tuple(tuples)]
    for u in range(k):
        has = ((vals >> np.uint64(u)) & np.uint64(1)).astype(bool)
        if not has.any():
            continue
        for i in range(m):
            others = [neg[tuples[j]] for j in range(m) if j != i]
            rhs = F[(np.full(tuples.shape[1], u),) + tuple(others)]
            ok = ((rhs >> tuples[i].astype(np.uint64)) & np.uint64(1)).astype(bool)
            bad = np.flatnonzero(has & ~ok)
            if bad.size:
                v = tuples[:, bad[0]]
                return Violation("reversibility", tuple(h.names[x] for x in v),
                                 f"{h.names[u]} in f(v) but v_{i + 1} not recovered")
    return None


def from_ring(name, k, add, mul, m=2, n=2, names=None, zero=0, one=1):
    """Structure with singleton hypervalues from ring-like callables on
    ``range(k)``: ``add`` and ``mul`` take a tuple of indices and return an
    index."""
    shape_f = (k,) * m
    f = np.zeros(shape_f, dtype=np.uint64)
    for t in np.ndindex(*shape_f):
        f[t] = np.uint64(1) << np.uint64(add(t))
    shape_g = (k,) * n
    g = np.zeros(shape_g, dtype=np.int64)
    for t in np.ndindex(*shape_g):
        g[t] = mul(t)
    return FiniteHyperring(m, n, f, g, zero, one, names=names, name=name)


def symmetric_rows(h):
    """One (sorted-args, value) row per multiset, for compact documents."""
    seen = set()
    out = []
    for t in np.ndindex(*(h.size,) * h.m):
        key = tuple(sorted(t))
        if key in seen:
            continue
        seen.add(key)
        out.append((key, int(h.F[key])))
    return out
