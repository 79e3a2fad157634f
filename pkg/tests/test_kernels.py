"""Both kernel backends must agree on every input."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krasner import ideals as I
from krasner import kernels as K
from krasner._backend import HAVE_NUMBA, backend_name
from krasner.corpus import corpus

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")

SMALL = [h for h in corpus(max_size=9)][:40]


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b)) and len(a) == len(b)
    return np.array_equal(np.asarray(a), np.asarray(b))


@pytest.mark.parametrize("h", SMALL, ids=lambda h: h.name)
def test_axiom_kernels_agree(h):
    for name, args in (
        ("f_assoc", (h.f, h.size, h.m)),
        ("g_assoc", (h.g, h.size, h.n)),
        ("distrib", (h.f, h.g, h.size, h.m, h.n)),
    ):
        nb, npf = K.KERNELS[name]
        assert same(nb(*args), npf(*args)), name


@pytest.mark.parametrize("h", SMALL, ids=lambda h: h.name)
def test_refute_and_closure_agree(h):
    nb, npf = K.KERNELS["refute_tuples"]
    for P in I._enumerate_masks(h, 64):
        in_p = I._bool_of(h, P)
        for s in range(h.size):
            c1 = in_p[h.G[(slice(None), s) + (h.one,) * (h.n - 2)]]
            args = (h.g, h.size, h.n, in_p, I._bool_of(h, 1 << h.zero), in_p, c1, s)
            a, b = nb(*args), npf(*args)
            assert bool(a[0]) == bool(b[0])
            assert int(a[1]) == int(b[1])
    nb, npf = K.KERNELS["closure"]
    for seed in range(1, min(h.full, 200) + 1, 7):
        args = (h.f, h.size, h.m, np.asarray(h.neg), np.asarray(h.principal_masks, dtype=np.uint64), h.zero, np.uint64(seed))
        assert int(nb(*args)) == int(npf(*args))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(SMALL) - 1), st.lists(st.integers(1, 2**9 - 1), min_size=3, max_size=3))
def test_images_agree(i, raw):
    h = SMALL[i]
    masks = np.array([(x & h.full) or 1 for x in raw][: h.n] + [1 << h.one] * max(0, h.n - 3), dtype=np.uint64)
    nb, npf = K.KERNELS["g_image"]
    assert int(nb(h.g, h.size, h.n, masks)) == int(npf(h.g, h.size, h.n, masks))
    fm = np.array([(x & h.full) or 1 for x in raw][: h.m] + [1 << h.zero] * max(0, h.m - 3), dtype=np.uint64)
    nb, npf = K.KERNELS["f_image"]
    assert int(nb(h.f, h.size, h.m, fm)) == int(npf(h.f, h.size, h.m, fm))


def test_backend_name_is_reported():
    assert backend_name() in ("numba", "numpy")
