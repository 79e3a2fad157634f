"""Compare the numba and numpy kernel backends on corpus-sized inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are timed in the same process by calling the two
implementations directly, after one warm-up call that also triggers JIT
compilation. Results are checked for agreement before timing.
"""
import argparse
import timeit

import numpy as np

from krasner import ideals as I
from krasner import kernels as K
from krasner._backend import HAVE_NUMBA
from krasner.corpus import corpus, zk


def cases():
    z8 = zk(8)
    prod = next(h for h in corpus() if h.name == "Z4xZ4")
    z43 = next(h for h in corpus() if h.name == "Z4(3,3)xZ4(3,3)")
    out = []
    for h in (z8, prod, z43):
        P = I._bool_of(h, I.proper_ideals(h)[0])
        zero = I._bool_of(h, 1 << h.zero)
        c1 = np.zeros(h.size, dtype=bool)
        out.append((f"refute_tuples {h.name}", "refute_tuples", (h.g, h.size, h.n, P, zero, P, c1, h.one)))
        out.append((f"g_image {h.name}", "g_image", (h.g, h.size, h.n, np.array([h.full] * h.n, dtype=np.uint64))))
        out.append((f"f_assoc {h.name}", "f_assoc", (h.f, h.size, h.m)))
        out.append((f"distrib {h.name}", "distrib", (h.f, h.g, h.size, h.m, h.n)))
    return out


def _normal(r):
    if isinstance(r, tuple):
        return tuple(_normal(x) for x in r)
    a = np.asarray(r)
    return tuple(a.ravel().tolist()) if a.ndim else a.item()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed; only the numpy backend can be timed")
    print(f"{'kernel':34} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for label, name, argv in cases():
        nb, npf = K.KERNELS[name]
        r_np = npf(*argv)
        r_nb = nb(*argv) if HAVE_NUMBA else r_np
        same = _normal(r_np) == _normal(r_nb)
        t_np = min(timeit.repeat(lambda: npf(*argv), number=1, repeat=args.repeat)) * 1000
        t_nb = min(timeit.repeat(lambda: nb(*argv), number=1, repeat=args.repeat)) * 1000 if HAVE_NUMBA else float("nan")
        flag = "" if same else "  MISMATCH"
        print(f"{label:34} {t_np:10.3f} {t_nb:10.3f} {t_np / t_nb:8.1f}{flag}")


if __name__ == "__main__":
    main()
