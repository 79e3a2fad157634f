"""Theorem harness: every structural result on phi-delta-S-primary
hyperideals as a hypothesis-filtered property swept over finite structures.

Each theorem is a pair of functions. ``instances(h, ctx)`` yields parameter
dicts (hyperideals as masks, maps by id, elements by index) and
``check(h, params)`` returns ``(hypothesis_met, conclusion_holds, detail)``.
Because ``check`` only needs ``h`` and the parameters, every reported
violation can be replayed from its record.

"associated to s" always means the defining implication for that one s;
"P is phi-delta-S-primary" without an s means some s in S works.
"""
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from . import ideals as I
from . import maps as M
from .classify import assoc, strong_assoc
from .constructions import (
    Homomorphism,
    ProductStructure,
    identity,
    is_compatible,
    localize,
    preimage,
    product_ideal_map,
    projection,
)
from .core import ConstructionError, is_subset, mask_of, members

THEOREM_IDS = tuple(f"T{i:02d}" for i in range(1, 28))
VIOLATION_CAP = 20


@dataclass
class Budget:
    max_mulset_size: int = 4
    max_instances: int = None  # per theorem, across all structures
    max_localization_mulset: int = 3
    max_product_mulset: int = 4

    def __post_init__(self):
        for name in ("max_mulset_size", "max_localization_mulset", "max_product_mulset"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_instances is not None and self.max_instances < 1:
            raise ValueError("max_instances must be positive")


@dataclass
class TheoremReport:
    id: str
    statement: str
    total: int = 0
    hypothesis_met: int = 0
    violation_count: int = 0
    violations: list = field(default_factory=list)
    filtered: dict = field(default_factory=dict)
    structures: int = 0
    wall_time_ms: float = None
    partial: bool = False

    @property
    def confirmed(self):
        return self.violation_count == 0

    def merge(self, other):
        self.total += other.total
        self.hypothesis_met += other.hypothesis_met
        self.violation_count += other.violation_count
        room = VIOLATION_CAP - len(self.violations)
        self.violations.extend(other.violations[: max(room, 0)])
        for k, v in other.filtered.items():
            self.filtered[k] = self.filtered.get(k, 0) + v
        self.structures += other.structures
        self.partial = self.partial or other.partial

    def to_dict(self, timing=True):
        return {
            "id": self.id,
            "statement": self.statement,
            "total": self.total,
            "hypothesis_met": self.hypothesis_met,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "filtered": dict(sorted(self.filtered.items())),
            "structures": self.structures,
            "wall_time_ms": round(self.wall_time_ms, 3) if timing and self.wall_time_ms is not None else None,
            "partial": self.partial,
        }


class BudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# shared vocabulary


@lru_cache(maxsize=None)
def _map(id):
    return M.get_map(id)


def phi_of(h, phi, P):
    return _map(phi).apply(h, P) if isinstance(phi, str) else phi.apply(h, P)


def delta_of(h, delta, P):
    return _map(delta).apply(h, P) if isinstance(delta, str) else delta.apply(h, P)


def admissible(h, P, S):
    return P != h.full and not P & S


def pds(h, P, phi, delta, s):
    """The defining implication of phi-delta-S-primary for one s."""
    return assoc(h, P, phi_of(h, phi, P), delta_of(h, delta, P), s)


def pds_search(h, P, phi, delta, S):
    return admissible(h, P, S) and any(pds(h, P, phi, delta, s) for s in members(S))


def dS(h, P, delta, s):
    """delta-S-primary implication for one s."""
    return assoc(h, P, 0, delta_of(h, delta, P), s)


def strong(h, P, phi, delta, s):
    return strong_assoc(h, P, phi_of(h, phi, P), delta_of(h, delta, P), s)


def phiS(h, P, phi, s):
    """phi-S-primary implication (expansion = radical) for one s."""
    return assoc(h, P, phi_of(h, phi, P), I.radical_mask(h, P), s)


def rad(h, P):
    return I.radical_mask(h, P)


def col(h, A, u):
    return I.colon_mask(h, A, u)


def col_ideal(h, A, Q):
    return I.colon_ideal(h, A, Q).mask


def gimg(h, masks):
    """Elementwise image of g, padding with 1 up to n arguments."""
    masks = list(masks) + [1 << h.one] * (h.n - len(masks))
    return I.image_product(h, masks)


def gpow_s(h, s):
    return h.eval_g((s,) * h.n)


def in_mask(x, A):
    return bool(A >> x & 1)


# ---------------------------------------------------------------------------
# sweep context


class Context:
    def __init__(self, h, budget):
        self.h = h
        self.budget = budget
        self.L = list(I._enumerate_masks(h, I.DEFAULT_ENUM_CAP))
        self.proper = [P for P in self.L if P != h.full]
        self.mulsets = [S for S in I.enumerate_multiplicative_sets(h, budget.max_mulset_size) if not S >> h.zero & 1]
        self.phis = [p.id for p in M.standard_phis(h)]
        self.deltas = [d.id for d in M.standard_deltas()]
        self._fractions = {}

    def fraction(self, S):
        """Localization at S, or None when it cannot be built."""
        if S not in self._fractions:
            key = ("frac", S)
            if key not in self.h.cache:
                try:
                    self.h.cache[key] = localize(self.h, S)
                except ConstructionError:
                    self.h.cache[key] = None
            self._fractions[S] = self.h.cache[key]
        return self._fractions[S]

    def adm(self):
        """(P, phi, delta, S, s) with P admissible for S."""
        for S in self.mulsets:
            for P in self.proper:
                if P & S:
                    continue
                for phi in self.phis:
                    for delta in self.deltas:
                        for s in members(S):
                            yield P, phi, delta, S, s


def _base(P, phi, delta, S, s, **extra):
    d = {"P": P, "phi": phi, "delta": delta, "S": S, "s": s}
    d.update(extra)
    return d


# ---------------------------------------------------------------------------
# T01 - T07: radicals and colons


def t01_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        yield _base(P, phi, delta, S, s)


def t01_check(h, a):
    P, phi, delta, S, s = a["P"], a["phi"], a["delta"], a["S"], a["s"]
    R = rad(h, P)
    hyp = (
        pds(h, P, phi, delta, s)
        and is_subset(rad(h, phi_of(h, phi, P)), phi_of(h, phi, R))
        and is_subset(rad(h, delta_of(h, delta, P)), delta_of(h, delta, R))
    )
    if not hyp:
        return False, True, ""
    ok = admissible(h, R, S) and pds(h, R, phi, delta, s)
    return True, ok, f"rad(P) = {h.fmt(R)}"


def t02_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        if delta == "delta1":
            yield _base(P, phi, delta, S, s)


def t02_check(h, a):
    P, phi, S, s = a["P"], a["phi"], a["S"], a["s"]
    R = rad(h, P)
    if not (phiS(h, P, phi, s) and is_subset(rad(h, phi_of(h, phi, P)), phi_of(h, phi, R))):
        return False, True, ""
    ok = admissible(h, R, S) and phiS(h, R, phi, s)
    return True, ok, f"rad(P) = {h.fmt(R)}"


def t03_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        if delta != "delta1":
            continue
        R = rad(h, P)
        for u in range(h.size):
            if not in_mask(u, col(h, R, s)):
                yield _base(P, phi, delta, S, s, u=u)


def t03_check(h, a):
    P, phi, S, s, u = a["P"], a["phi"], a["S"], a["s"], a["u"]
    R = rad(h, P)
    pR = phi_of(h, phi, R)
    hyp = (
        phiS(h, P, phi, s)
        and is_subset(rad(h, phi_of(h, phi, P)), pR)
        and all(is_subset(col(h, pR, t), col(h, pR, s)) for t in members(S))
    )
    if not hyp:
        return False, True, ""
    C = col(h, R, u)
    return True, not C & S, f"(rad(P) : u) = {h.fmt(C)}"


def t04_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        yield _base(P, phi, delta, S, s)


def t04_check(h, a):
    P, phi, delta, S, s = a["P"], a["phi"], a["delta"], a["S"], a["s"]
    R, Dp = rad(h, P), delta_of(h, delta, P)
    pR = phi_of(h, phi, R)
    hyp = (
        pds(h, P, phi, delta, s)
        and col(h, Dp, s) == col(h, R, s)
        and all(is_subset(col(h, pR, t), col(h, pR, s)) for t in members(S))
        and is_subset(Dp, R)
    )
    if not hyp:
        return False, True, ""
    ds = col(h, Dp, s)
    if ds != col(h, Dp, gpow_s(h, s)):
        return True, False, "(delta(P) : s) differs from (delta(P) : g(s^n))"
    for u in range(h.size):
        if not in_mask(u, ds) and col(h, Dp, u) & S:
            return True, False, f"u = {h.names[u]} has (delta(P) : u) meeting S"
    return True, True, ""


def _colon_dichotomy(h, P, phi, s, u):
    w = h.g2(s, u)
    Pw = col(h, P, w)
    return Pw == col(h, phi_of(h, phi, P), w) or Pw == col(h, P, s)


def t05_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        D2 = col(h, delta_of(h, delta, P), gpow_s(h, s))
        for u in range(h.size):
            if not in_mask(u, D2):
                yield _base(P, phi, delta, S, s, u=u)


def t05_check(h, a):
    P, phi, delta, s, u = a["P"], a["phi"], a["delta"], a["s"], a["u"]
    if not pds(h, P, phi, delta, s):
        return False, True, ""
    return True, _colon_dichotomy(h, P, phi, s, u), ""


def t06_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        if delta != "delta1":
            continue
        for u in range(h.size):
            if not in_mask(u, col(h, rad(h, P), s)):
                yield _base(P, phi, delta, S, s, u=u)


def t06_check(h, a):
    P, phi, s, u = a["P"], a["phi"], a["s"], a["u"]
    if not phiS(h, P, phi, s):
        return False, True, ""
    return True, _colon_dichotomy(h, P, phi, s, u), ""


def t07_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        for u in range(h.size):
            if not in_mask(u, P):
                yield _base(P, phi, delta, S, s, u=u)


def t07_check(h, a):
    P, phi, delta, S, s, u = a["P"], a["phi"], a["delta"], a["S"], a["s"], a["u"]
    C = col(h, P, u)
    if not (pds(h, P, phi, delta, s) and is_subset(col(h, phi_of(h, phi, P), u), phi_of(h, phi, C))):
        return False, True, ""
    if C == h.full or C & S:
        return "filtered:colon not admissible", True, ""
    return True, pds(h, C, phi, delta, s), f"(P : u) = {h.fmt(C)}"


# ---------------------------------------------------------------------------
# T08 - T13: intersections, products, global statements, change of S


def _constant_phis(h, ctx):
    return [phi for phi in ctx.phis if M.is_constant(_map(phi), h)]


def t08_inst(h, ctx):
    const = set(_constant_phis(h, ctx))
    for P, phi, delta, S, s in ctx.adm():
        if phi not in const:
            continue
        for Q in ctx.L:
            if Q & S:
                yield _base(P, phi, delta, S, s, Q=Q)


def t08_check(h, a):
    P, phi, delta, S, s, Q = a["P"], a["phi"], a["delta"], a["S"], a["s"], a["Q"]
    PQ = P & Q
    hyp = (
        pds(h, P, phi, delta, s)
        and M.is_constant(_map(phi), h)
        and delta_of(h, delta, PQ) == delta_of(h, delta, P) & delta_of(h, delta, Q)
    )
    if not hyp:
        return False, True, ""
    return True, pds_search(h, PQ, phi, delta, S), f"P meet Q = {h.fmt(PQ)}"


def t09_inst(h, ctx):
    const = set(_constant_phis(h, ctx))
    for P, phi, delta, S, s in ctx.adm():
        if phi not in const:
            continue
        meets = [Q for Q in ctx.L if Q & S]
        for Qs in combinations_with_replacement(meets, h.n - 1):
            yield _base(P, phi, delta, S, s, Qs=tuple(Qs))


def t09_check(h, a):
    P, phi, delta, S, s, Qs = a["P"], a["phi"], a["delta"], a["S"], a["s"], a["Qs"]
    J = I.ideal_product(h, list(Qs) + [P])
    Dj = delta_of(h, delta, J.mask)
    want = delta_of(h, delta, P)
    for Q in Qs:
        want &= delta_of(h, delta, Q)
    hyp = pds(h, P, phi, delta, s) and M.is_constant(_map(phi), h) and Dj == want
    if not hyp:
        return False, True, ""
    detail = f"product = {h.fmt(J.mask)} (raw image was a hyperideal: {J.image_was_ideal})"
    return True, pds_search(h, J.mask, phi, delta, S), detail


def _dprim(h, P, delta):
    return P != h.full and dS(h, P, delta, h.one)


def t10_inst(h, ctx):
    for phi in ctx.phis:
        for delta in ctx.deltas:
            for S in ctx.mulsets:
                yield {"phi": phi, "delta": delta, "S": S}


def t10_check(h, a):
    phi, delta, S = a["phi"], a["delta"], a["S"]
    if not M.is_idempotent(_map(phi), h):
        return False, True, ""
    proper = [P for P in I._enumerate_masks(h, I.DEFAULT_ENUM_CAP) if P != h.full]
    lhs = all(_dprim(h, P, delta) for P in proper if pds_search(h, P, phi, delta, S))
    images = {phi_of(h, phi, P) for P in proper}
    rhs_a = all(_dprim(h, X, delta) for X in images if X != h.full and not X & S)
    rhs_b = all(
        _dprim(h, P, delta)
        for P in proper
        if admissible(h, P, S) and any(dS(h, P, delta, s) for s in members(S))
    )
    ok = lhs == (rhs_a and rhs_b)
    return True, ok, f"left side {lhs}; phi-images delta-primary {rhs_a}; delta-S-primary are delta-primary {rhs_b}"


def t11_inst(h, ctx):
    for S in ctx.mulsets:
        yield {"S": S}


def _primary(h, P):
    return P != h.full and assoc(h, P, 0, rad(h, P), h.one)


def t11_check(h, a):
    S = a["S"]
    proper = [P for P in I._enumerate_masks(h, I.DEFAULT_ENUM_CAP) if P != h.full]
    zero = 1 << h.zero
    weak = [P for P in proper if admissible(h, P, S) and any(assoc(h, P, zero, rad(h, P), s) for s in members(S))]
    spri = [P for P in proper if admissible(h, P, S) and any(assoc(h, P, 0, rad(h, P), s) for s in members(S))]
    lhs = all(_primary(h, P) for P in weak)
    dom = I.is_hyperintegral_domain(h)
    sp_ok = all(_primary(h, P) for P in spri)
    rhs = dom and sp_ok
    detail = f"weakly-S-primary are primary {lhs}; hyperintegral domain {dom}; S-primary are primary {sp_ok}"
    bad = [P for P in weak if not _primary(h, P)]
    if bad:
        detail += f"; weakly-S-primary but not primary: {h.fmt(bad[0])}"
    return True, lhs == rhs, detail


def t12_inst(h, ctx):
    for T in ctx.mulsets:
        for S in ctx.mulsets:
            if S == T or not is_subset(S, T):
                continue
            for P in ctx.proper:
                if P & T:
                    continue
                for phi in ctx.phis:
                    for delta in ctx.deltas:
                        for s in members(T):
                            yield {"P": P, "phi": phi, "delta": delta, "S": S, "T": T, "s": s}


def t12_check(h, a):
    P, phi, delta, S, T, s = a["P"], a["phi"], a["delta"], a["S"], a["T"], a["s"]
    cond = all(any(in_mask(h.eval_g((t,) * (h.n - 1) + (t2,)), S) for t2 in members(T)) for t in members(T))
    if not (cond and pds(h, P, phi, delta, s)):
        return False, True, ""
    return True, pds_search(h, P, phi, delta, S), ""


def s_prime(ctx, S):
    F = ctx.fraction(S)
    if F is None:
        return None
    return mask_of(a for a in range(ctx.h.size) if I.is_invertible(F.ring, int(F.canon[a])))


def t13_inst(h, ctx):
    for S in ctx.mulsets:
        if not in_mask(h.one, S) or h.size > 8:
            continue
        Sp = s_prime(ctx, S)
        if Sp is None:
            continue
        for P in ctx.proper:
            for phi in ctx.phis:
                for delta in ctx.deltas:
                    yield {"P": P, "phi": phi, "delta": delta, "S": S, "S_prime": Sp}


def t13_check(h, a):
    P, phi, delta, S, Sp = a["P"], a["phi"], a["delta"], a["S"], a["S_prime"]
    if not (in_mask(h.one, S) and I.is_multiplicative(h, Sp)):
        return False, True, ""
    lhs = pds_search(h, P, phi, delta, S)
    rhs = pds_search(h, P, phi, delta, Sp)
    return True, lhs == rhs, f"S' = {h.fmt(Sp)}; for S {lhs}, for S' {rhs}"


# ---------------------------------------------------------------------------
# T14 - T22: strongly primary hyperideals


def _strong_not_dS(h, P, phi, delta, s):
    return strong(h, P, phi, delta, s) and not dS(h, P, delta, s)


def t14_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        yield _base(P, phi, delta, S, s)


def t14_check(h, a):
    P, phi, delta, s = a["P"], a["phi"], a["delta"], a["s"]
    if not strong(h, P, phi, delta, s):
        return False, True, ""
    X, D = phi_of(h, phi, P), delta_of(h, delta, P)
    n = h.n
    for flat in range(h.size**n):
        u = I.unflatten(h, flat)
        if not in_mask(h.eval_g(u), X):
            continue
        if any(in_mask(h.g2(s, u[i]), P) or in_mask(h.eval_g(u[:i] + (s,) + u[i + 1 :]), D) for i in range(n)):
            continue
        for r in range(1, n + 1):
            for J in combinations(range(n), r):
                masks = [P if i in J else 1 << u[i] for i in range(n)]
                if not is_subset(I.image_product(h, masks), X):
                    return True, False, f"u = ({', '.join(h.names[x] for x in u)}), slots {list(J)} replaced by P"
    return True, True, ""


def t15_inst(h, ctx):
    yield from t14_inst(h, ctx)


def t15_check(h, a):
    P, phi, delta, s = a["P"], a["phi"], a["delta"], a["s"]
    if not _strong_not_dS(h, P, phi, delta, s):
        return False, True, ""
    img = I.image_product(h, [P] * h.n)
    return True, is_subset(img, phi_of(h, phi, P)), f"g(P^(n)) = {h.fmt(img)}"


def t16_inst(h, ctx):
    yield from t14_inst(h, ctx)


def t16_check(h, a):
    P, phi, delta, s = a["P"], a["phi"], a["delta"], a["s"]
    if not _strong_not_dS(h, P, phi, delta, s):
        return False, True, ""
    return True, rad(h, P) == rad(h, phi_of(h, phi, P)), ""


def t17_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        if in_mask(h.one, S):
            yield _base(P, phi, delta, S, s)


def t17_check(h, a):
    P, phi, delta, S, s = a["P"], a["phi"], a["delta"], a["S"], a["s"]
    if not (in_mask(h.one, S) and strong(h, P, phi, delta, s)):
        return False, True, ""
    rp = rad(h, phi_of(h, phi, P))
    ok = is_subset(P, rp) or is_subset(gimg(h, [1 << s, rp]), delta_of(h, delta, P))
    return True, ok, ""


def t18_inst(h, ctx):
    yield from t14_inst(h, ctx)


def t18_check(h, a):
    P, phi, delta, s = a["P"], a["phi"], a["delta"], a["s"]
    X, D = phi_of(h, phi, P), delta_of(h, delta, P)
    Ps = col(h, P, s)
    rhs = all(
        col(h, P, u) == col(h, X, u) or is_subset(col(h, P, u), Ps)
        for u in range(h.size)
        if not in_mask(u, col(h, D, s))
    )
    lhs = strong(h, P, phi, delta, s)
    return True, lhs == rhs, f"strongly {lhs}; colon condition {rhs}"


def t19_inst(h, ctx):
    yield from t14_inst(h, ctx)


def t19_check(h, a):
    P, phi, delta, s = a["P"], a["phi"], a["delta"], a["s"]
    X, D = phi_of(h, phi, P), delta_of(h, delta, P)
    Ds = col(h, D, s)
    rhs = all(
        col(h, P, u) == col(h, X, u) or is_subset(col(h, P, u), Ds)
        for u in range(h.size)
        if not in_mask(u, col(h, P, s))
    )
    lhs = strong(h, P, phi, delta, s)
    return True, lhs == rhs, f"strongly {lhs}; colon condition {rhs}"


def t20_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        for Q in ctx.L:
            if not is_subset(Q, P):
                yield _base(P, phi, delta, S, s, Q=Q)


def t20_check(h, a):
    P, phi, delta, S, s, Q = a["P"], a["phi"], a["delta"], a["S"], a["s"], a["Q"]
    C = col_ideal(h, P, Q)
    hyp = (
        strong(h, P, phi, delta, s)
        and is_subset(col_ideal(h, delta_of(h, delta, P), Q), delta_of(h, delta, C))
        and is_subset(col_ideal(h, phi_of(h, phi, P), Q), phi_of(h, phi, C))
    )
    if not hyp:
        return False, True, ""
    if C & S:
        return "filtered:colon meets S", True, ""
    return True, pds_search(h, C, phi, delta, S), f"(P : Q) = {h.fmt(C)}"


def t21_inst(h, ctx):
    yield from t17_inst(h, ctx)


def _s_times(h, s, A):
    return gimg(h, [1 << s, A])


def t21_check(h, a):
    P, phi, delta, S, s = a["P"], a["phi"], a["delta"], a["S"], a["s"]
    D = delta_of(h, delta, P)
    hyp = in_mask(h.one, S) and _strong_not_dS(h, P, phi, delta, s) and col(h, P, s) == col(h, D, s)
    if not hyp:
        return False, True, ""
    X = phi_of(h, phi, P)
    inner = _s_times(h, s, rad(h, X))
    img = I.image_product(h, [inner] + [P] * (h.n - 1))
    return True, is_subset(img, X), f"image = {h.fmt(img)}"


def t22_inst(h, ctx):
    for P, phi, delta, S, s in ctx.adm():
        if not in_mask(h.one, S):
            continue
        for Q in ctx.proper:
            if not Q & S:
                yield _base(P, phi, delta, S, s, Q=Q)


def t22_check(h, a):
    P, phi, delta, S, s, Q = a["P"], a["phi"], a["delta"], a["S"], a["s"], a["Q"]
    hyp = (
        in_mask(h.one, S)
        and _strong_not_dS(h, P, phi, delta, s)
        and _strong_not_dS(h, Q, phi, delta, s)
        and col(h, P, s) == col(h, delta_of(h, delta, P), s)
        and col(h, Q, s) == col(h, delta_of(h, delta, Q), s)
        and is_subset(phi_of(h, phi, Q), phi_of(h, phi, P))
    )
    if not hyp:
        return False, True, ""
    X = phi_of(h, phi, P)
    img = I.image_product(h, [_s_times(h, s, Q)] + [P] * (h.n - 1))
    return True, is_subset(img, X), f"image = {h.fmt(img)}"


# ---------------------------------------------------------------------------
# T23: localization


def t23_inst(h, ctx):
    if h.size > 8:
        return
    for S in ctx.mulsets:
        if I.popcount(S) > ctx.budget.max_localization_mulset or ctx.fraction(S) is None:
            continue
        for P in ctx.proper:
            if P & S:
                continue
            for phi in ctx.phis:
                for delta in ctx.deltas:
                    for s in members(S):
                        yield _base(P, phi, delta, S, s)


def _t23_preamble(h, F, P, phi, delta):
    base_L = I._enumerate_masks(h, I.DEFAULT_ENUM_CAP)
    for u in members(F.D):
        for A in base_L:
            if phi_of(h, phi, col(h, A, u)) != col(h, phi_of(h, phi, A), u):
                return False
            if delta_of(h, delta, col(h, A, u)) != col(h, delta_of(h, delta, A), u):
                return False
    J = F.extend_ideal(P)
    pS = F.localized_value(_map(phi), J)
    dSv = F.localized_value(_map(delta), J)
    if pS is None or dSv is None:
        return False
    R = F.ring
    if J != R.full and dSv == R.full:
        return False
    return delta_of(h, delta, F.contract_ideal(J)) == F.contract_ideal(F.extend_ideal(delta_of(h, delta, P)))


def t23_check(h, a):
    P, phi, delta, S, s = a["P"], a["phi"], a["delta"], a["S"], a["s"]
    F = localize(h, S) if ("frac", S) not in h.cache else h.cache[("frac", S)]
    if F is None:
        return False, True, ""
    X = phi_of(h, phi, P)
    hyp = (
        admissible(h, P, S)
        and X == col(h, X, s)
        and all(is_subset(col(h, X, t), col(h, X, s)) for t in members(S))
        and _t23_preamble(h, F, P, phi, delta)
    )
    if not hyp:
        return False, True, ""
    R = F.ring
    J = F.extend_ideal(P)
    i = pds(h, P, phi, delta, s)
    Q = col(h, P, s)
    ii = Q != h.full and pds(h, Q, phi, delta, h.one)
    loc = J != R.full and assoc(R, J, F.localized_value(_map(phi), J), F.localized_value(_map(delta), J), R.one)
    iii = loc and all(is_subset(col(h, P, t), Q) for t in members(S))
    iv = loc and F.contract_ideal(J) == Q
    return True, i == ii == iii == iv, f"(i) {i}, (ii) {ii}, (iii) {iii}, (iv) {iv}"


# ---------------------------------------------------------------------------
# T24: homomorphic preimages


def _zk_target(k, d, m, n):
    from .corpus import zk

    return zk(d, m, n)


def epimorphisms(h, ctx=None):
    """Named epimorphisms with source ``h``: the identity, projections of a
    product, reductions Z_k -> Z_d and surjective canonical maps a -> a/1."""
    key = "epis"
    if key in h.cache:
        return h.cache[key]
    out = [("identity", identity(h))]
    if isinstance(h, ProductStructure):
        out.append(("projection-1", projection(h, 0)))
        out.append(("projection-2", projection(h, 1)))
    k = getattr(h, "modulus", None)
    if k is not None:
        for d in range(2, k):
            if k % d == 0:
                tgt = _zk_target(k, d, h.m, h.n)
                out.append((f"mod-{d}", Homomorphism(h, tgt, [x % d for x in range(k)])))
    if ctx is not None and h.size <= 8:
        for S in ctx.mulsets:
            if I.popcount(S) > ctx.budget.max_localization_mulset:
                continue
            F = ctx.fraction(S)
            if F is not None and F.ring.size > 1:
                c = F.canonical_map()
                if c.is_surjective:
                    out.append((f"canonical-{','.join(h.names_of(S))}", c))
    h.cache[key] = out
    return out


def _epi(h, name):
    for nm, k in h.cache.get("epis") or epimorphisms(h):
        if nm == name:
            return k
    raise KeyError(name)


def t24_inst(h, ctx):
    for name, k in epimorphisms(h, ctx):
        T = k.target
        tL = [P2 for P2 in I._enumerate_masks(T, I.DEFAULT_ENUM_CAP) if P2 != T.full]
        for S in ctx.mulsets:
            if not in_mask(h.one, S):
                continue
            kS = k.image_mask(S)
            for phi in ctx.phis:
                if phi.startswith("pow:") and T.n != h.n:
                    continue
                for delta in ctx.deltas:
                    for P2 in tL:
                        if P2 & kS:
                            continue
                        for s in members(S):
                            yield {"epi": name, "P2": P2, "phi": phi, "delta": delta, "S": S, "s": s}


def t24_check(h, a):
    k = _epi(h, a["epi"])
    P2, phi, delta, S, s = a["P2"], a["phi"], a["delta"], a["S"], a["s"]
    T = k.target
    kS = k.image_mask(S)
    ck = ("compat", a["epi"], phi, delta)
    if ck not in h.cache:
        h.cache[ck] = is_compatible(k, _map(phi), _map(phi), _map(delta), _map(delta))
    hyp = (
        not k.is_zero
        and k.is_surjective
        and h.cache[ck]
        and in_mask(h.one, S)
        and admissible(T, P2, kS)
        and pds(T, P2, phi, delta, int(k.map[s]))
    )
    if not hyp:
        return False, True, ""
    pre = preimage(k, P2).mask
    return True, admissible(h, pre, S) and pds(h, pre, phi, delta, s), f"preimage {h.fmt(pre)}"


# ---------------------------------------------------------------------------
# T25 - T27: direct products


def _product_mulsets(p, ctx):
    h1, h2 = p.factors
    cap = ctx.budget.max_product_mulset
    S1s = [S for S in I.enumerate_multiplicative_sets(h1, cap) if not S >> h1.zero & 1]
    S2s = [S for S in I.enumerate_multiplicative_sets(h2, cap) if not S >> h2.zero & 1]
    for S1 in S1s:
        for S2 in S2s:
            if I.popcount(S1) * I.popcount(S2) <= cap:
                yield S1, S2


def _factor_maps(p):
    h1, h2 = p.factors
    return [x.id for x in M.standard_phis(h1)], [x.id for x in M.standard_deltas()]


def _pmap(p, id1, id2):
    key = ("pmap", id1, id2)
    if key not in p.cache:
        p.cache[key] = product_ideal_map(p, _map(id1), _map(id2))
    return p.cache[key]


def _product_inst(p, ctx, with_p2):
    if not isinstance(p, ProductStructure):
        return
    h1, h2 = p.factors
    phis, deltas = _factor_maps(p)
    L1 = I._enumerate_masks(h1, I.DEFAULT_ENUM_CAP)
    L2 = I._enumerate_masks(h2, I.DEFAULT_ENUM_CAP) if with_p2 else [h2.full]
    for S1, S2 in _product_mulsets(p, ctx):
        for P1 in L1:
            for P2 in L2:
                for f1 in phis:
                    for f2 in phis:
                        for d1 in deltas:
                            for d2 in deltas:
                                for s1 in members(S1):
                                    for s2 in members(S2):
                                        yield {
                                            "P1": P1, "P2": P2, "phi1": f1, "phi2": f2, "delta1": d1,
                                            "delta2": d2, "S1": S1, "S2": S2, "s1": s1, "s2": s2,
                                        }


def _product_parts(p, a):
    h1, h2 = p.factors
    X = p.combine(a["P1"], a["P2"])
    S = p.combine(a["S1"], a["S2"])
    s = a["s1"] * h2.size + a["s2"]
    return h1, h2, X, S, s, _pmap(p, a["phi1"], a["phi2"]), _pmap(p, a["delta1"], a["delta2"])


def t25_inst(p, ctx):
    yield from _product_inst(p, ctx, False)


def t25_check(p, a):
    h1, h2, X, S, s, ph, dh = _product_parts(p, a)
    if phi_of(h2, a["phi2"], h2.full) == h2.full:
        return False, True, ""
    lhs = admissible(p, X, S) and pds(p, X, ph, dh, s)
    rhs = (
        admissible(h1, a["P1"], a["S1"])
        and dS(h1, a["P1"], a["delta1"], a["s1"])
        and admissible(p, X, S)
        and dS(p, X, dh, s)
    )
    return True, lhs == rhs, f"left {lhs}, right {rhs}"


def t26_inst(p, ctx):
    yield from _product_inst(p, ctx, False)


def t26_check(p, a):
    h1, h2, X, S, s, ph, dh = _product_parts(p, a)
    P1, S1, s1 = a["P1"], a["S1"], a["s1"]
    lhs = admissible(p, X, S) and pds(p, X, ph, dh, s) and not dS(p, X, dh, s)
    rhs = (
        phi_of(h2, a["phi2"], h2.full) == h2.full
        and ph.apply(p, X) != 0
        and admissible(h1, P1, S1)
        and pds(h1, P1, a["phi1"], a["delta1"], s1)
        and not dS(h1, P1, a["delta1"], s1)
    )
    return True, lhs == rhs, f"left {lhs}, right {rhs}"


def t27_inst(p, ctx):
    yield from _product_inst(p, ctx, True)


def t27_check(p, a):
    h1, h2, X, S, s, ph, dh = _product_parts(p, a)
    P1, P2, S1, S2, s1, s2 = a["P1"], a["P2"], a["S1"], a["S2"], a["s1"], a["s2"]
    d1, d2 = a["delta1"], a["delta2"]
    hyp = (
        phi_of(h1, a["phi1"], P1) != P1
        and phi_of(h2, a["phi2"], P2) != P2
        and (P1 == h1.full or delta_of(h1, d1, P1) != h1.full)
        and (P2 == h2.full or delta_of(h2, d2, P2) != h2.full)
    )
    if not hyp:
        return False, True, ""
    i = admissible(p, X, S) and pds(p, X, ph, dh, s)

    def dsp(h, P, Sx, d, sx):
        return admissible(h, P, Sx) and dS(h, P, d, sx)

    ii = (
        (dsp(h2, P2, S2, d2, s2) and P1 == h1.full)
        or (dsp(h2, P2, S2, d2, s2) and in_mask(s1, P1 & S1))
        or (dsp(h1, P1, S1, d1, s1) and P2 == h2.full)
        or (dsp(h1, P1, S1, d1, s1) and in_mask(s2, P2 & S2))
    )
    iii = admissible(p, X, S) and dS(p, X, dh, s)
    return True, i == ii == iii, f"(i) {i}, (ii) {ii}, (iii) {iii}"


# ---------------------------------------------------------------------------
# registry and runner

STATEMENTS = {
    "T01": "rad(P) inherits phi-delta-S-primary when rad commutes with phi and delta",
    "T02": "rad(P) of a phi-S-primary P is phi-S-primary under rad(phi(P)) in phi(rad(P))",
    "T03": "(rad(P) : u) avoids S for u outside (rad(P) : s)",
    "T04": "(delta(P) : s) = (delta(P) : g(s^n)) and colons outside it avoid S",
    "T05": "colon dichotomy at g(s,u) for u outside (delta(P) : g(s^n))",
    "T06": "colon dichotomy at g(s,u) for phi-S-primary P and u outside (rad(P) : s)",
    "T07": "(P : u) is phi-delta-S-primary when (phi(P) : u) lies in phi(P : u)",
    "T08": "P meet Q is phi-delta-S-primary for constant phi and Q meeting S",
    "T09": "g(P_1^(n-1), P) is phi-delta-S-primary for constant phi and P_j meeting S",
    "T10": "for idempotent phi: phi-delta-S-primary implies delta-primary iff phi-images and delta-S-primary ones are",
    "T11": "weakly-S-primary implies primary iff hyperintegral domain and S-primary implies primary",
    "T12": "T-primary descends to S-primary for S in T with the s' condition",
    "T13": "phi-delta-S-primary iff phi-delta-S'-primary for S' the units of the localization",
    "T14": "strongly primary: replacing any slots of a phi-product tuple by P stays in phi(P)",
    "T15": "strongly primary and not delta-S-primary gives g(P^(n)) inside phi(P)",
    "T16": "strongly primary and not delta-S-primary gives rad(P) = rad(phi(P))",
    "T17": "strongly primary with 1 in S: P in rad(phi(P)) or g(s, rad(phi(P))) in delta(P)",
    "T18": "strongly primary iff colon condition over u outside (delta(P) : s)",
    "T19": "strongly primary iff colon condition over u outside (P : s)",
    "T20": "(P : Q) is phi-delta-S-primary for strongly primary P and compatible maps",
    "T21": "g(g(s, rad(phi(P))), P^(n-1)) inside phi(P)",
    "T22": "g(g(s, Q), P^(n-1)) inside phi(P) for two strongly primary hyperideals",
    "T23": "four-way equivalence through the localization at S",
    "T24": "preimages under compatible epimorphisms stay phi-delta-S-primary",
    "T25": "P_1 x K_2 is product-primary iff P_1 is delta_1-S_1-primary and P_1 x K_2 is product-delta-S-primary",
    "T26": "P_1 x K_2 is product-primary but not product-delta-S-primary iff phi_2(K_2) = K_2 and likewise for P_1",
    "T27": "three-way equivalence for P_1 x P_2",
}

THEOREMS = {tid: (globals()[f"t{tid[1:]}_inst"], globals()[f"t{tid[1:]}_check"]) for tid in THEOREM_IDS}


def _render(h, tid, params):
    """Name-based, JSON-ready form of an instance."""
    out = {"structure": h.name}
    src = h
    if tid == "T24":
        src = _epi(h, params["epi"]).target
    for k, v in params.items():
        if k in ("phi", "delta", "phi1", "phi2", "delta1", "delta2", "epi"):
            out[k] = v
        elif tid in ("T25", "T26", "T27"):
            h1, h2 = h.factors
            fac = h1 if k.endswith("1") else h2
            out[k] = fac.names[v] if k in ("s1", "s2") else fac.names_of(v)
        elif k == "P2":
            out[k] = src.names_of(v)
        elif k in ("s", "u"):
            out[k] = h.names[v]
        elif k == "Qs":
            out[k] = [h.names_of(Q) for Q in v]
        else:
            out[k] = h.names_of(v)
    return out


def _raw(params):
    out = {}
    for k, v in params.items():
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


def _from_raw(params):
    return {k: tuple(v) if isinstance(v, list) else v for k, v in params.items()}


def replay(tid, h, params):
    """Re-run one instance from scratch (fresh caches). Returns the same
    triple as the theorem's check."""
    _, check = THEOREMS[tid]
    saved = dict(h.cache)
    h.cache.clear()
    if "epis" in saved:
        h.cache["epis"] = saved["epis"]
    try:
        return check(h, _from_raw(params))
    finally:
        h.cache.clear()
        h.cache.update(saved)


def run_theorem(tid, h, budget=None, used=0):
    """Sweep one theorem over one structure. ``used`` counts instances
    already spent against ``budget.max_instances``."""
    budget = budget or Budget()
    if tid not in THEOREMS:
        raise KeyError(f"unknown theorem id {tid!r}")
    inst, check = THEOREMS[tid]
    ckey = ("ctx", budget.max_mulset_size, budget.max_localization_mulset, budget.max_product_mulset)
    if ckey not in h.cache:
        h.cache[ckey] = Context(h, budget)
    ctx = h.cache[ckey]
    rep = TheoremReport(tid, STATEMENTS[tid], structures=1)
    t0 = time.perf_counter()
    for params in inst(h, ctx):
        if budget.max_instances is not None and used + rep.total >= budget.max_instances:
            rep.partial = True
            break
        rep.total += 1
        hyp, ok, detail = check(h, params)
        if isinstance(hyp, str):
            reason = hyp.split(":", 1)[1]
            rep.filtered[reason] = rep.filtered.get(reason, 0) + 1
            continue
        if not hyp:
            continue
        rep.hypothesis_met += 1
        if not ok:
            rep.violation_count += 1
            if len(rep.violations) < VIOLATION_CAP:
                rec = {"instance": _render(h, tid, params), "params": _raw(params), "detail": detail}
                rep.violations.append(rec)
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    return rep


def default_structures(max_size=6):
    from .corpus import corpus

    return corpus(max_size=max_size)


def run_all(structures=None, budget=None, only=None):
    """One merged report per theorem id over all structures."""
    budget = budget or Budget()
    structures = default_structures() if structures is None else list(structures)
    ids = THEOREM_IDS if only is None else tuple(only)
    for tid in ids:
        if tid not in THEOREMS:
            raise KeyError(f"unknown theorem id {tid!r}")
    reports = []
    for tid in ids:
        total = TheoremReport(tid, STATEMENTS[tid])
        t0 = time.perf_counter()
        for h in structures:
            r = run_theorem(tid, h, budget, used=total.total)
            total.merge(r)
            if r.partial:
                break
        total.wall_time_ms = (time.perf_counter() - t0) * 1000
        reports.append(total)
    return reports


def coverage(reports):
    """Theorem ids with no hypothesis-met instance."""
    return sorted(r.id for r in reports if r.hypothesis_met == 0)


# ---------------------------------------------------------------------------
# witness mode for the analytic structures


def witness_checks():
    """Replays of the known refutations on the modular structures. Each entry
    records whether the tuple refutes, and for the small modulus whether the
    table-backed classifier agrees."""
    from .analytic import Modular, check_witness
    from .classify import refute

    out = []
    a = Modular(5, 25, 4, 3)
    P = a.ideal("5^5")
    w = check_witness(a, P, "pow:5", "delta0", 1, (5, 5, 5, 5, 5))
    out.append({
        "structure": a.id, "ideal": str(P), "phi": "pow:5", "delta": "delta0", "S": ["1"], "s": "1",
        "tuple": ["5", "5", "5", "5", "5"], "refutes": w.refutes, "expected": True, "agrees_with_tables": None,
    })
    b = Modular(2, 8, 2, 2)
    Pb = b.ideal("4")
    wb = check_witness(b, Pb, "phi0", "delta0", 1, (2, 2))
    # Z_256 is too large for tables; the same tuple and ideal behave the
    # same way in Z_8, which is small enough for the exhaustive classifier
    fin = Modular(2, 3, 2, 2).to_finite()
    Pm = I.generated_hyperideal(fin, 1 << 4).mask
    X, D = M.get_map("phi0").apply(fin, Pm), M.get_map("delta0").apply(fin, Pm)
    table_refutes = replay_tuple_refutes(fin, Pm, X, D, fin.one, (2, 2))
    _, u = refute(fin, Pm, X, D, fin.one)
    out.append({
        "structure": b.id, "ideal": str(Pb), "phi": "phi0", "delta": "delta0", "S": ["1"], "s": "1",
        "tuple": ["2", "2"], "refutes": wb.refutes, "expected": True,
        "agrees_with_tables": wb.refutes == table_refutes and (u is not None) == wb.refutes,
    })
    return out


def replay_tuple_refutes(h, P, X, D, s, u):
    from .classify import replay as _rp

    return _rp(h, P, X, D, s, u)
