"""Reduction (phi) and expansion (delta) functions on hyperideals.

A map is evaluated on hyperideal bitmasks of a given structure. Built-ins
are looked up by id; user maps come from explicit tables and must pass
:func:`verify_contract` before they are used.
"""
from dataclasses import dataclass, field

from . import ideals as I
from .core import InputError, is_subset

REDUCTION = "reduction"
EXPANSION = "expansion"

PHI_IDS = ("phi0", "phi1", "phiN", "phiW")
DELTA_IDS = ("delta0", "delta1", "deltaK", "deltaM")


@dataclass(frozen=True)
class IdealMap:
    id: str
    kind: str
    fn: object = field(compare=False, repr=False)

    def apply(self, h, P):
        """Image of hyperideal ``P`` (mask or :class:`Hyperideal`) as a mask."""
        P = I._m(P)
        key = ("map", self.id, P)
        try:
            return h.cache[key]
        except KeyError:
            val = h.cache[key] = int(self.fn(h, P))
            return val

    def __call__(self, h, P):
        return I.Hyperideal(h, self.apply(h, P))

    def __str__(self):
        return self.id


def _phi_w(h, P):
    out = h.full
    for Q in I.power_chain(h, P):
        out &= Q
    return out


def _delta_m(h, P):
    out = h.full
    for M in I.maximals(h):
        if is_subset(P, M):
            out &= M
    return out


def _pow(k):
    return lambda h, P: I.ideal_power(h, P, k).mask


_BUILTIN = {
    "phi0": (REDUCTION, lambda h, P: 1 << h.zero),
    "phi1": (REDUCTION, lambda h, P: P),
    "phiN": (REDUCTION, lambda h, P: I.ideal_power(h, P, h.n).mask),
    "phiW": (REDUCTION, _phi_w),
    "delta0": (EXPANSION, lambda h, P: P),
    "delta1": (EXPANSION, lambda h, P: I.radical_mask(h, P)),
    "deltaK": (EXPANSION, lambda h, P: h.full),
    "deltaM": (EXPANSION, _delta_m),
}


def builtin_phi(id):
    if id.startswith("pow:"):
        try:
            k = int(id[4:])
        except ValueError:
            raise InputError(f"bad exponent in {id!r}") from None
        if k < 1:
            raise InputError(f"bad exponent in {id!r}")
        # the exponent is checked against n when the map is applied
        return IdealMap(id, REDUCTION, _pow(k))
    kind, fn = _BUILTIN.get(id, (None, None))
    if kind != REDUCTION:
        raise InputError(f"unknown reduction function {id!r}")
    return IdealMap(id, kind, fn)


def builtin_delta(id):
    kind, fn = _BUILTIN.get(id, (None, None))
    if kind != EXPANSION:
        raise InputError(f"unknown expansion function {id!r}")
    return IdealMap(id, kind, fn)


def get_map(x, kind=None):
    """Resolve an id string (or pass through an :class:`IdealMap`)."""
    if isinstance(x, IdealMap):
        m = x
    elif x.startswith("phi") or x.startswith("pow:"):
        m = builtin_phi(x)
    else:
        m = builtin_delta(x)
    if kind is not None and m.kind != kind:
        raise InputError(f"{m.id} is a {m.kind} function, expected {kind}")
    return m


def standard_phis(h):
    """Built-in reductions used by the theorem sweep: the four named ones
    plus the power with the next admissible exponent after n."""
    return [builtin_phi(x) for x in PHI_IDS] + [builtin_phi(f"pow:{2 * h.n - 1}")]


def standard_deltas():
    return [builtin_delta(x) for x in DELTA_IDS]


def table_map(id, kind, h, table):
    """A user map given by an explicit ``{P_mask: image_mask}`` table over
    every hyperideal of ``h``."""
    if kind not in (REDUCTION, EXPANSION):
        raise InputError(f"unknown map kind {kind!r}")
    table = {int(k): int(v) for k, v in table.items()}
    missing = [P for P in I._enumerate_masks(h, I.DEFAULT_ENUM_CAP) if P not in table]
    if missing:
        raise InputError(f"map {id} has no value for {h.fmt(missing[0])}")
    for v in table.values():
        if not I.is_hyperideal(h, v):
            raise InputError(f"map {id} takes a value {h.fmt(v)} that is not a hyperideal")
    return IdealMap(id, kind, lambda hh, P: table[P])


@dataclass
class ContractReport:
    map_id: str
    structure: str
    violations: list

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def verify_contract(fn, h):
    """Containment and monotonicity over every (pair of) hyperideal(s)."""
    fn = get_map(fn)
    L = I._enumerate_masks(h, I.DEFAULT_ENUM_CAP)
    out = []
    img = {}
    for P in L:
        try:
            img[P] = fn.apply(h, P)
        except InputError as e:
            out.append(("defined", h.fmt(P), str(e)))
            continue
        if not I.is_hyperideal(h, img[P]):
            out.append(("hyperideal value", h.fmt(P), h.fmt(img[P])))
        inner, outer = (img[P], P) if fn.kind == REDUCTION else (P, img[P])
        if not is_subset(inner, outer):
            out.append(("containment", h.fmt(P), h.fmt(img[P])))
    for P in img:
        for Q in img:
            if P != Q and is_subset(P, Q) and not is_subset(img[P], img[Q]):
                out.append(("monotonicity", h.fmt(P), h.fmt(Q)))
    return ContractReport(fn.id, h.name, out)


def is_idempotent(fn, h):
    fn = get_map(fn)
    return all(fn.apply(h, fn.apply(h, P)) == fn.apply(h, P) for P in I._enumerate_masks(h, I.DEFAULT_ENUM_CAP))


def is_constant(fn, h):
    """phi(P) = phi(I) for every pair of hyperideals."""
    fn = get_map(fn)
    return len({fn.apply(h, P) for P in I._enumerate_masks(h, I.DEFAULT_ENUM_CAP)}) == 1
