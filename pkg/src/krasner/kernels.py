"""Hot loops over hyperoperation tables.

Every kernel exists twice: a numba ``_nb`` variant written as plain loops
and a vectorised ``_np`` variant. The public name dispatches to one of
them according to :mod:`krasner._backend`. Both variants must return
identical results; ``tests/test_kernels.py`` checks this.

Tables are flat C-order arrays. ``f`` holds uint64 bitmasks (bit ``x`` set
iff element ``x`` is in the hypervalue), ``g`` holds element indices. The
carrier size ``k`` is at most 64.
"""
import numpy as np

from ._backend import USE_NUMBA, njit

_U1 = np.uint64(1)
_U0 = np.uint64(0)


def _bitmask_members(mask):
    mask = int(mask)
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return np.array(out, dtype=np.int64)


def _all_tuples(k, arity):
    total = k**arity
    if arity == 0:
        return np.zeros((0, 1), dtype=np.int64)
    return np.array(np.unravel_index(np.arange(total), (k,) * arity), dtype=np.int64)


# ---------------------------------------------------------------------------
# refutation search over element tuples


@njit(cache=True)
def _refute_tuples_nb(g, k, n, in_p, excl, in_d, c1, s):
    strides = np.empty(n, np.int64)
    st = 1
    for i in range(n - 1, -1, -1):
        strides[i] = st
        st *= k
    total = st
    digits = np.zeros(n, np.int64)
    seen = False
    for idx in range(total):
        if idx > 0:
            j = n - 1
            while True:
                digits[j] += 1
                if digits[j] < k:
                    break
                digits[j] = 0
                j -= 1
        p = g[idx]
        if in_p[p] and not excl[p]:
            seen = True
            ok = False
            for i in range(n):
                ui = digits[i]
                if c1[ui]:
                    ok = True
                    break
                if in_d[g[idx + (s - ui) * strides[i]]]:
                    ok = True
                    break
            if not ok:
                return seen, idx
    return seen, -1


def _refute_tuples_np(g, k, n, in_p, excl, in_d, c1, s):
    G = g.reshape((k,) * n)
    ant = in_p[G] & ~excl[G]
    if not ant.any():
        return False, -1
    ok = np.zeros(ant.shape, dtype=bool)
    for i in range(n):
        shape = [1] * n
        shape[i] = k
        ok |= c1.reshape(shape)
        ok |= in_d[np.take(G, [s], axis=i)]
    bad = np.flatnonzero(ant & ~ok)
    return True, (int(bad[0]) if bad.size else -1)


def refute_tuples(g, k, n, in_p, excl, in_d, c1, s):
    """Search all n-tuples ``u`` with ``g(u)`` in ``in_p`` and not in ``excl``.

    A tuple is refuting when for every slot ``i`` both ``c1[u_i]`` is false
    and ``g(u)`` with slot ``i`` replaced by ``s`` is outside ``in_d``.
    Returns ``(antecedent_met, flat_index_of_first_refuting_tuple or -1)``.
    """
    impl = _refute_tuples_nb if USE_NUMBA else _refute_tuples_np
    seen, idx = impl(g, k, n, in_p, excl, in_d, c1, s)
    return bool(seen), int(idx)


# ---------------------------------------------------------------------------
# hyperideal closure


@njit(cache=True)
def _closure_nb(f, k, m, neg, princ, zero, seed):
    cur = seed | (_U1 << np.uint64(zero))
    members = np.empty(k, np.int64)
    digits = np.zeros(m, np.int64)
    while True:
        cnt = 0
        for i in range(k):
            if (cur >> np.uint64(i)) & _U1:
                members[cnt] = i
                cnt += 1
        nxt = cur
        for j in range(cnt):
            e = members[j]
            nxt |= princ[e]
            nxt |= _U1 << np.uint64(neg[e])
        total = 1
        for _ in range(m):
            total *= cnt
        for d in range(m):
            digits[d] = 0
        for t in range(total):
            if t > 0:
                j = m - 1
                while True:
                    digits[j] += 1
                    if digits[j] < cnt:
                        break
                    digits[j] = 0
                    j -= 1
            idx = 0
            for d in range(m):
                idx = idx * k + members[digits[d]]
            nxt |= f[idx]
        if nxt == cur:
            return cur
        cur = nxt


def _closure_np(f, k, m, neg, princ, zero, seed):
    F = f.reshape((k,) * m)
    cur = int(seed) | (1 << int(zero))
    while True:
        members = _bitmask_members(cur)
        nxt = cur
        nxt |= int(np.bitwise_or.reduce(princ[members]))
        for b in neg[members]:
            nxt |= 1 << int(b)
        nxt |= int(np.bitwise_or.reduce(F[np.ix_(*([members] * m))], axis=None))
        if nxt == cur:
            return np.uint64(cur)
        cur = nxt


def closure(f, k, m, neg, princ, zero, seed):
    """Least superset of ``seed`` containing zero and closed under the
    hyperaddition, negation, and multiplication by arbitrary elements.

    ``princ[e]`` must be the bitmask of the principal hyperideal of ``e``.
    """
    impl = _closure_nb if USE_NUMBA else _closure_np
    return int(impl(f, k, m, neg, princ, zero, np.uint64(seed)))


# ---------------------------------------------------------------------------
# images of subsets


@njit(cache=True)
def _f_image_nb(f, k, m, masks):
    out = _U0
    sizes = np.zeros(m, np.int64)
    members = np.empty((m, k), np.int64)
    for a in range(m):
        c = 0
        for i in range(k):
            if (masks[a] >> np.uint64(i)) & _U1:
                members[a, c] = i
                c += 1
        sizes[a] = c
        if c == 0:
            return _U0
    digits = np.zeros(m, np.int64)
    while True:
        idx = 0
        for a in range(m):
            idx = idx * k + members[a, digits[a]]
        out |= f[idx]
        j = m - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < sizes[j]:
                break
            digits[j] = 0
            j -= 1
        if j < 0:
            return out


def _f_image_np(f, k, m, masks):
    members = [_bitmask_members(x) for x in masks]
    if any(mb.size == 0 for mb in members):
        return np.uint64(0)
    F = f.reshape((k,) * m)
    return np.bitwise_or.reduce(F[np.ix_(*members)], axis=None)


def f_image(f, k, m, masks):
    """Union of hypervalues over all representatives of the subsets."""
    impl = _f_image_nb if USE_NUMBA else _f_image_np
    return int(impl(f, k, m, np.asarray(masks, dtype=np.uint64)))


@njit(cache=True)
def _g_image_nb(g, k, n, masks):
    out = _U0
    sizes = np.zeros(n, np.int64)
    members = np.empty((n, k), np.int64)
    for a in range(n):
        c = 0
        for i in range(k):
            if (masks[a] >> np.uint64(i)) & _U1:
                members[a, c] = i
                c += 1
        sizes[a] = c
        if c == 0:
            return _U0
    digits = np.zeros(n, np.int64)
    while True:
        idx = 0
        for a in range(n):
            idx = idx * k + members[a, digits[a]]
        out |= _U1 << np.uint64(g[idx])
        j = n - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < sizes[j]:
                break
            digits[j] = 0
            j -= 1
        if j < 0:
            return out


def _g_image_np(g, k, n, masks):
    members = [_bitmask_members(x) for x in masks]
    if any(mb.size == 0 for mb in members):
        return np.uint64(0)
    G = g.reshape((k,) * n)
    vals = np.unique(G[np.ix_(*members)])
    return np.bitwise_or.reduce(np.left_shift(_U1, vals.astype(np.uint64)))


def g_image(g, k, n, masks):
    """Set of products ``g(u_1..u_n)`` with ``u_i`` drawn from ``masks[i]``."""
    impl = _g_image_nb if USE_NUMBA else _g_image_np
    return int(impl(g, k, n, np.asarray(masks, dtype=np.uint64)))


# ---------------------------------------------------------------------------
# axiom checks; each returns (witness digits, detail) or (empty, -1)


@njit(cache=True)
def _f_assoc_nb(f, k, m):
    L = 2 * m - 1
    total = 1
    for _ in range(L):
        total *= k
    digits = np.zeros(L, np.int64)
    for t in range(total):
        if t > 0:
            j = L - 1
            while True:
                digits[j] += 1
                if digits[j] < k:
                    break
                digits[j] = 0
                j -= 1
        ref = _U0
        for i in range(m):
            inner_idx = 0
            for d in range(m):
                inner_idx = inner_idx * k + digits[i + d]
            inner = f[inner_idx]
            out = _U0
            for x in range(k):
                if (inner >> np.uint64(x)) & _U1:
                    oidx = 0
                    for d in range(i):
                        oidx = oidx * k + digits[d]
                    oidx = oidx * k + x
                    for d in range(i + m, L):
                        oidx = oidx * k + digits[d]
                    out |= f[oidx]
            if i == 0:
                ref = out
            elif out != ref:
                return digits.copy(), i
    return np.zeros(0, np.int64), -1


def _f_assoc_np(f, k, m):
    L = 2 * m - 1
    F = f.reshape((k,) * m)
    dig = _all_tuples(k, L)
    total = dig.shape[1]
    ref = None
    for i in range(m):
        inner = F[tuple(dig[i:i + m])]
        out = np.zeros(total, dtype=np.uint64)
        for x in range(k):
            has = ((inner >> np.uint64(x)) & _U1).astype(bool)
            if not has.any():
                continue
            xs = np.full(total, x, dtype=np.int64)
            vals = F[tuple(dig[:i]) + (xs,) + tuple(dig[i + m:])]
            out |= np.where(has, vals, _U0)
        if ref is None:
            ref = out
            continue
        bad = np.flatnonzero(out != ref)
        if bad.size:
            return dig[:, bad[0]].copy(), i
    return np.zeros(0, np.int64), -1


def f_assoc_violation(f, k, m):
    """First (2m-1)-tuple whose bracketing at ``placement`` disagrees with
    the leftmost bracketing, as ``(tuple, placement)``; ``placement`` is -1
    when the hyperaddition is associative."""
    impl = _f_assoc_nb if USE_NUMBA else _f_assoc_np
    dig, i = impl(f, k, m)
    return tuple(int(x) for x in dig), int(i)


@njit(cache=True)
def _g_assoc_nb(g, k, n):
    L = 2 * n - 1
    total = 1
    for _ in range(L):
        total *= k
    digits = np.zeros(L, np.int64)
    for t in range(total):
        if t > 0:
            j = L - 1
            while True:
                digits[j] += 1
                if digits[j] < k:
                    break
                digits[j] = 0
                j -= 1
        ref = -1
        for i in range(n):
            inner_idx = 0
            for d in range(n):
                inner_idx = inner_idx * k + digits[i + d]
            x = g[inner_idx]
            oidx = 0
            for d in range(i):
                oidx = oidx * k + digits[d]
            oidx = oidx * k + x
            for d in range(i + n, L):
                oidx = oidx * k + digits[d]
            out = g[oidx]
            if i == 0:
                ref = out
            elif out != ref:
                return digits.copy(), i
    return np.zeros(0, np.int64), -1


def _g_assoc_np(g, k, n):
    L = 2 * n - 1
    G = g.reshape((k,) * n)
    dig = _all_tuples(k, L)
    ref = None
    for i in range(n):
        inner = G[tuple(dig[i:i + n])]
        out = G[tuple(dig[:i]) + (inner,) + tuple(dig[i + n:])]
        if ref is None:
            ref = out
            continue
        bad = np.flatnonzero(out != ref)
        if bad.size:
            return dig[:, bad[0]].copy(), i
    return np.zeros(0, np.int64), -1


def g_assoc_violation(g, k, n):
    impl = _g_assoc_nb if USE_NUMBA else _g_assoc_np
    dig, i = impl(g, k, n)
    return tuple(int(x) for x in dig), int(i)


@njit(cache=True)
def _distrib_nb(f, g, k, m, n):
    # digits[0:n-1] are the fixed factors, digits[n-1:] the summands
    L = n - 1 + m
    total = 1
    for _ in range(L):
        total *= k
    digits = np.zeros(L, np.int64)
    prods = np.empty(m, np.int64)
    for slot in range(n):
        for d in range(L):
            digits[d] = 0
        for t in range(total):
            if t > 0:
                j = L - 1
                while True:
                    digits[j] += 1
                    if digits[j] < k:
                        break
                    digits[j] = 0
                    j -= 1
            sidx = 0
            for d in range(m):
                sidx = sidx * k + digits[n - 1 + d]
            summed = f[sidx]
            lhs = _U0
            for x in range(k):
                if (summed >> np.uint64(x)) & _U1:
                    gidx = 0
                    pos = 0
                    for a in range(n):
                        if a == slot:
                            gidx = gidx * k + x
                        else:
                            gidx = gidx * k + digits[pos]
                            pos += 1
                    lhs |= _U1 << np.uint64(g[gidx])
            for b in range(m):
                gidx = 0
                pos = 0
                for a in range(n):
                    if a == slot:
                        gidx = gidx * k + digits[n - 1 + b]
                    else:
                        gidx = gidx * k + digits[pos]
                        pos += 1
                prods[b] = g[gidx]
            ridx = 0
            for b in range(m):
                ridx = ridx * k + prods[b]
            if f[ridx] != lhs:
                return digits.copy(), slot
    return np.zeros(0, np.int64), -1


def _distrib_np(f, g, k, m, n):
    L = n - 1 + m
    F = f.reshape((k,) * m)
    G = g.reshape((k,) * n)
    dig = _all_tuples(k, L)
    total = dig.shape[1]
    fixed = list(dig[: n - 1])
    summands = dig[n - 1:]
    summed = F[tuple(summands)]
    for slot in range(n):
        def gprod(x, _slot=slot):
            args = fixed[:_slot] + [x] + fixed[_slot:]
            return G[tuple(args)]

        lhs = np.zeros(total, dtype=np.uint64)
        for x in range(k):
            has = ((summed >> np.uint64(x)) & _U1).astype(bool)
            if not has.any():
                continue
            vals = gprod(np.full(total, x, dtype=np.int64)).astype(np.uint64)
            lhs |= np.where(has, _U1 << vals, _U0)
        rhs = F[tuple(gprod(summands[b]) for b in range(m))]
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            return dig[:, bad[0]].copy(), slot
    return np.zeros(0, np.int64), -1


def distrib_violation(f, g, k, m, n):
    """First failure of ``g(.., f(v), ..) == f(g(.., v_1, ..), ...)`` as
    ``(fixed factors + summands, slot)``; slot is -1 when none fails."""
    impl = _distrib_nb if USE_NUMBA else _distrib_np
    dig, slot = impl(f, g, k, m, n)
    return tuple(int(x) for x in dig), int(slot)


KERNELS = {
    "refute_tuples": (_refute_tuples_nb, _refute_tuples_np),
    "closure": (_closure_nb, _closure_np),
    "f_image": (_f_image_nb, _f_image_np),
    "g_image": (_g_image_nb, _g_image_np),
    "f_assoc": (_f_assoc_nb, _f_assoc_np),
    "g_assoc": (_g_assoc_nb, _g_assoc_np),
    "distrib": (_distrib_nb, _distrib_np),
}
