import numpy as np
import pytest

from krasner.core import FiniteHyperring

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def hyper3():
    from krasner.corpus import hyper3 as build

    return build()


def mutate(h, f=None, g=None, name="mutant"):
    """Copy of ``h`` with table entries overridden. ``f``/``g`` map argument
    name tuples to a value (list of names for f, a name for g); every
    permutation is overwritten so commutativity survives."""
    from itertools import permutations

    F = h.F.copy()
    G = h.G.copy()
    for args, val in (f or {}).items():
        mask = h.subset(val)
        for p in set(permutations(h.index(a) for a in args)):
            F[p] = mask
    for args, val in (g or {}).items():
        for p in set(permutations(h.index(a) for a in args)):
            G[p] = h.index(val)
    return FiniteHyperring(h.m, h.n, F, G, h.zero, h.one, list(h.names), name)


@pytest.fixture
def mutator():
    return mutate


