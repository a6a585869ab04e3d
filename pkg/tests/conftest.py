import random

import pytest

from mayerpath.complexes import Digraph, path_complex_from_digraph
from mayerpath.fixtures import load_digraph, load_fixture


@pytest.fixture(scope="session")
def diamond():
    return load_fixture("diamond")


@pytest.fixture(scope="session")
def diamond_graph():
    return load_digraph("diamond")


@pytest.fixture(scope="session")
def torus():
    return load_fixture("torus_minimal")


def random_digraph(rng: random.Random, n_min=3, n_max=6, p=0.35,
                   allow_antiparallel=False) -> Digraph:
    """Seeded random simple digraph, optionally free of 2-cycles."""
    n = rng.randint(n_min, n_max)
    labels = tuple(str(i + 1) for i in range(n))
    edges = []
    present = set()
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if not allow_antiparallel and (v, u) in present:
                continue
            if rng.random() < p:
                edges.append((u, v))
                present.add((u, v))
    return Digraph(labels, tuple(edges))


def bounded_random_complex(rng, N, max_dim, budget=400, **kw):
    """Random digraph complex whose relevant dimensions stay desk-sized.

    Resamples (deterministically, from the same stream) until the path
    counts the Betti pipeline will touch stay below ``budget``.
    """
    while True:
        g = random_digraph(rng, **kw)
        P = path_complex_from_digraph(g, max_dim)
        needed = max_dim + N - 1
        if sum(len(P.paths(n)) for n in range(needed + 1)) <= budget:
            return g, P
