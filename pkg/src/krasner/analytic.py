"""Two built-in infinite or oversized structures, handled with exact
arithmetic and queried pointwise rather than enumerated.

``UnitIntervalMax`` is [0, 1] with u + v = {max(u, v)} for u != v and
u + u = [0, u], multiplied ternarily as real numbers. ``Modular`` is the
ring Z_(p^k) viewed as a Krasner (m, n)-hyperring with singleton sums.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .classify import FAILS, SAMPLED, Classification, Refutation
from .core import InputError, PreconditionError

FAILS_ON_SAMPLE = "fails-on-sample"


@dataclass(frozen=True)
class DownSet:
    """[0, hi] when ``closed`` else [0, hi)."""

    hi: Fraction
    closed: bool = True

    def __contains__(self, x):
        return 0 <= x <= self.hi if self.closed else 0 <= x < self.hi

    def __str__(self):
        if self.hi == 0 and self.closed:
            return "{0}"
        return f"[0, {self.hi}{']' if self.closed else ')'}"


@dataclass(frozen=True)
class PowerIdeal:
    """<p^j> in Z_(p^k)."""

    p: int
    j: int
    k: int

    def __contains__(self, x):
        return x % self.p**self.j == 0

    def __str__(self):
        if self.j == 0:
            return "K"
        if self.j >= self.k:
            return "{0}"
        return f"<{self.p}^{self.j}>"


@dataclass(frozen=True)
class Interval:
    """A multiplicative set (lo, hi] or [lo, hi] inside [0, 1]."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool = False

    def __contains__(self, x):
        return (self.lo <= x if self.lo_closed else self.lo < x) and x <= self.hi

    def sample(self, step):
        out = []
        j = 0
        while j * step <= self.hi:
            if j * step in self:
                out.append(j * step)
            j += 1
        return out

    def __str__(self):
        return f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}]"


def _frac(text):
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not an exact rational: {text!r}") from None


class AnalyticStructure:
    id = ""
    m = n = 0

    def product(self, xs):
        """Iterated product of x(n-1)+1 factors (any count is accepted; the
        structures here are associative and unital)."""
        xs = list(xs)
        if (len(xs) - 1) % (self.n - 1):
            raise InputError(f"{len(xs)} factors is not of the form x({self.n}-1)+1")
        acc = self.one
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def g2(self, a, b):
        return self.mul(a, b)


class UnitIntervalMax(AnalyticStructure):
    id = "unit-interval-max"
    m, n = 2, 3
    zero, one = Fraction(0), Fraction(1)

    def element(self, text):
        x = _frac(text)
        if not 0 <= x <= 1:
            raise InputError(f"{x} is outside [0, 1]")
        return x

    def eval_f(self, u, v):
        u, v = self.element(u), self.element(v)
        return DownSet(u) if u == v else {max(u, v)}

    def mul(self, a, b):
        return a * b

    def ideal(self, text):
        """``a`` or ``[0,a]`` for a closed down-set, ``[0,a)`` for an open one."""
        t = text.replace(" ", "")
        mt = re.fullmatch(r"\[0,([^\]\)]+)([\]\)])", t)
        if mt:
            hi, closed = self.element(mt.group(1)), mt.group(2) == "]"
        else:
            hi, closed = self.element(t), True
        if not closed and hi == 0:
            raise InputError("[0, 0) is empty")
        return DownSet(hi, closed)

    def is_proper(self, P):
        return P != DownSet(Fraction(1), True)

    def phi(self, id, P):
        if id == "phi0":
            return DownSet(Fraction(0))
        if id == "phi1":
            return P
        if id == "phiW":
            # powers of [0, a] shrink to {0} for a < 1; [0, 1) and K are fixed
            return DownSet(Fraction(0)) if P.hi < 1 else P
        if id == "phiN" or id.startswith("pow:"):
            e = self.n if id == "phiN" else _exponent(id, self.n)
            return DownSet(P.hi**e, P.closed or P.hi == 0)
        raise InputError(f"unknown reduction function {id!r}")

    def delta(self, id, P):
        K = DownSet(Fraction(1))
        if id == "delta0":
            return P
        if id == "deltaK":
            return K
        if id in ("delta1", "deltaM"):
            if P == K:
                return K
            if id == "delta1" and P.hi == 0:
                return P  # the interval has no zero divisors, so {0} is prime
            return DownSet(Fraction(1), False)
        raise InputError(f"unknown expansion function {id!r}")

    def mulset(self, text):
        t = text.replace(" ", "")
        mt = re.fullmatch(r"([\(\[])([^,]+),([^\]]+)\]", t)
        if mt:
            lo, hi = self.element(mt.group(2)), self.element(mt.group(3))
            S = Interval(lo, hi, mt.group(1) == "[")
            # products shrink, so only intervals reaching down to 0 are closed
            if lo != 0 and not (lo == hi == 1 and S.lo_closed):
                raise PreconditionError(f"{S} is not multiplicative")
            return S
        S = frozenset(self.element(x) for x in t.split(","))
        _check_finite_mulset(self, S)
        return S

    def grid(self, step):
        step = _frac(step)
        return [j * step for j in range(int(1 / step) + 1)]


class Modular(AnalyticStructure):
    """Z_(p^k) with singleton m-ary sums and n-ary products."""

    def __init__(self, p, k, m, n):
        p, k, m, n = int(p), int(k), int(m), int(n)
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise InputError(f"{p} is not prime")
        if k < 1 or m < 2 or n < 2:
            raise InputError("need k >= 1 and arities >= 2")
        self.p, self.k, self.m, self.n = p, k, m, n
        self.N = p**k
        self.zero, self.one = 0, 1
        self.id = f"modular({p},{k},{m},{n})"

    def element(self, text):
        t = str(text).replace(" ", "")
        mt = re.fullmatch(r"(\d+)\^(\d+)", t)
        try:
            x = int(mt.group(1)) ** int(mt.group(2)) if mt else int(t)
        except ValueError:
            raise InputError(f"not an integer: {text!r}") from None
        if not 0 <= x < self.N:
            raise InputError(f"{x} is outside Z_{self.p}^{self.k}")
        return x

    def eval_f(self, *xs):
        return {sum(xs) % self.N}

    def mul(self, a, b):
        return a * b % self.N

    def valuation(self, x):
        if x % self.N == 0:
            return self.k
        j = 0
        while x % self.p == 0:
            x //= self.p
            j += 1
        return j

    def ideal(self, text):
        """The hyperideal generated by an element, e.g. ``5^5``."""
        return PowerIdeal(self.p, self.valuation(self.element(text)), self.k)

    def is_proper(self, P):
        return P.j > 0

    def _pi(self, j):
        return PowerIdeal(self.p, min(j, self.k), self.k)

    def phi(self, id, P):
        if id == "phi0":
            return self._pi(self.k)
        if id == "phi1":
            return P
        if id == "phiW":
            return P if P.j == 0 else self._pi(self.k)
        if id == "phiN" or id.startswith("pow:"):
            e = self.n if id == "phiN" else _exponent(id, self.n)
            return self._pi(P.j * e)
        raise InputError(f"unknown reduction function {id!r}")

    def delta(self, id, P):
        if id == "delta0":
            return P
        if id == "deltaK":
            return self._pi(0)
        if id in ("delta1", "deltaM"):
            return self._pi(0) if P.j == 0 else self._pi(1)
        raise InputError(f"unknown expansion function {id!r}")

    def mulset(self, text):
        S = frozenset(self.element(x) for x in text.split(","))
        _check_finite_mulset(self, S)
        return S

    def to_finite(self):
        """The same ring as a table-backed structure (small N only)."""
        from .core import from_ring

        N = self.N
        return from_ring(self.id, N, lambda t: sum(t) % N, lambda t: _prod_mod(t, N), self.m, self.n)


def _prod_mod(t, N):
    acc = 1
    for x in t:
        acc = acc * int(x) % N
    return acc


def _exponent(id, n):
    try:
        e = int(id[4:])
    except ValueError:
        raise InputError(f"bad exponent in {id!r}") from None
    if e < 1 or (e - 1) % (n - 1):
        raise InputError(f"power exponent {e} is not of the form x({n}-1)+1")
    return e


def _check_finite_mulset(a, S):
    if not S:
        raise PreconditionError("a multiplicative set must be nonempty")
    for t in iproduct(sorted(S), repeat=a.n):
        if a.product(t) not in S:
            raise PreconditionError(f"{{{', '.join(map(str, sorted(S)))}}} is not multiplicative")


def parse_structure(text):
    t = text.replace(" ", "")
    if t == "unit-interval-max":
        return UnitIntervalMax()
    mt = re.fullmatch(r"modular\((\d+),(\d+),(\d+),(\d+)\)", t)
    if mt:
        return Modular(*mt.groups())
    return None


# ---------------------------------------------------------------------------
# witness-mode classification


@dataclass(frozen=True)
class WitnessCheck:
    """Replay of one tuple against phi-delta-S-primary with a fixed s."""

    tuple: tuple
    s: object
    product: object
    antecedent: bool
    slots: tuple  # per slot: (g(u_i, s, 1..) in P, g(u with u_i := s) in delta(P))

    @property
    def refutes(self):
        return self.antecedent and not any(a or b for a, b in self.slots)

    def classification(self):
        if not self.refutes:
            return None
        return Classification(FAILS, "phi-delta-S-primary", self.s, Refutation(self.s, self.tuple, self.describe()))

    def describe(self):
        u = ", ".join(map(str, self.tuple))
        lines = [f"product of ({u}) = {self.product}; in P minus phi(P): {self.antecedent}"]
        for i, (a, b) in enumerate(self.slots, 1):
            lines.append(f"  slot {i}: g(u_{i}, s) in P: {a}; g(u with u_{i} := s) in delta(P): {b}")
        return "\n".join(lines)


def _admissible(a, P, S, require_disjoint):
    if not a.is_proper(P):
        raise PreconditionError("the hyperideal must be proper")
    if require_disjoint:
        if isinstance(S, Interval):
            # a down-set meets (lo, hi] exactly when it reaches past lo
            meets = P.hi > S.lo or (P.closed and P.hi == S.lo and S.lo_closed)
        else:
            meets = any(x in P for x in S)
        if meets:
            raise PreconditionError(f"{P} meets the multiplicative set; the hyperideal must be disjoint from S")


def check_witness(a, P, phi, delta, s, u):
    """Exact replay of a candidate refutation. ``u`` may have x(n-1)+1
    entries, in which case products are the x-fold iterated product."""
    u = tuple(u)
    if len(u) < a.n or (len(u) - 1) % (a.n - 1):
        raise InputError(f"witness of length {len(u)} is not of the form x({a.n}-1)+1 with x >= 1")
    X, D = a.phi(phi, P), a.delta(delta, P)
    p = a.product(u)
    ante = p in P and p not in X
    slots = tuple((a.g2(u[i], s) in P, a.product(u[:i] + (s,) + u[i + 1 :]) in D) for i in range(len(u)))
    return WitnessCheck(u, s, p, ante, slots)


def classify_witness(a, P, phi, delta, S, u, s=None, require_disjoint=True):
    """Refute with the given tuple for some (or the fixed) s in a finite S."""
    _admissible(a, P, S, require_disjoint)
    cands = [s] if s is not None else sorted(S)
    return [check_witness(a, P, phi, delta, c, u) for c in cands]


def classify_sampled(a, P, phi, delta, S, step=Fraction(1, 20), require_disjoint=True):
    """Grid search over n-tuples of sample points of the unit interval.

    A sampled affirmation is reported as ``holds-on-sample``. A refutation is
    exact for its s; when S is infinite and every sampled s is refuted the
    verdict is ``fails-on-sample``.
    """
    _admissible(a, P, S, require_disjoint)
    step = _frac(step)
    grid = a.grid(step)
    if isinstance(S, Interval):
        cands, exhaustive = S.sample(step), False
    else:
        cands, exhaustive = sorted(S), True
    if not cands:
        raise PreconditionError("no sample point falls in the multiplicative set")
    first = None
    for c in cands:
        bad = None
        for u in iproduct(grid, repeat=a.n):
            w = check_witness(a, P, phi, delta, c, u)
            if w.refutes:
                bad = w
                break
        if bad is None:
            return Classification(SAMPLED, "phi-delta-S-primary", c, None, tuple(cands))
        if first is None:
            first = bad
    verdict = FAILS if exhaustive else FAILS_ON_SAMPLE
    return Classification(verdict, "phi-delta-S-primary", first.s, Refutation(first.s, first.tuple, first.describe()), tuple(cands))
