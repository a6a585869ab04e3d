"""Acceptance suite: one test per criterion, exact assertions throughout.

Run with ``pytest tests/test_acceptance.py -v`` to get one pass/fail line
per criterion.  Every homology value is exact (no tolerances); runtime
budgets are asserted where stated.
"""

import itertools
import random
import subprocess
import sys
import time

import pytest

from conftest import bounded_random_complex, random_digraph
from mayerpath.boundary import kapranov_expansion_check
from mayerpath.complexes import path_complex_from_digraph
from mayerpath.cycles import UndirectedCycle, is_admissible, z1_generators, z1_kernel_space
from mayerpath.cyclotomic import Scalar
from mayerpath.fixtures import (
    ALL_FIXTURES,
    fixture_kind,
    fixture_text,
    load_digraph,
    load_fixture,
)
from mayerpath.homology import (
    betti_table,
    boundary_space,
    brute_force_oracle,
    cycle_space,
    poincare_identity_check,
)
from mayerpath.linalg import Subspace, quotient_dim
from mayerpath.omega import omega_full, omega_nilpotency, omega_nq, verify_chain_closure
from mayerpath.report import run_compat_report
from mayerpath.structure import GAMMA_PATTERNS, minimal_clusters, omega2_decompose


def _announce(criterion, detail=""):
    print(f"ACCEPTANCE {criterion}: PASS {detail}")


def test_criterion_01_diamond_order_two():
    start = time.time()
    P = load_fixture("diamond")
    t = betti_table(P, 2, 3)
    assert [t.entries[(n, 1)] for n in range(4)] == [1, 0, 0, 0]
    elapsed = time.time() - start
    assert elapsed < 1.0
    _announce(1, f"({elapsed:.3f}s)")


def test_criterion_02_diamond_order_three():
    P = load_fixture("diamond")
    t = betti_table(P, 3, 3)
    assert [t.entries[(n, 1)] for n in range(3)] == [1, 1, 0]
    assert t.entries[(0, 2)] == 0
    assert t.entries[(2, 2)] == 0
    assert t.omega_dims == {0: 4, 1: 5, 2: 3, 3: 0}
    assert omega_nq(P, 3, 2, 3).space.dim == 0
    # the (1, 2) cell is recomputation-authoritative: the published value 1
    # contradicts the published 5-dim cycle space and 3 independent
    # boundary generators; both engines give 2
    oracle = brute_force_oracle(P, 3, 3)
    assert t.entries[(1, 2)] == oracle.entries[(1, 2)] == 2
    report = run_compat_report()
    cell = next(c for c in report.cells
                if (c.fixture, c.order, c.q, c.n) == ("diamond", 3, 2, 1))
    assert cell.status == "reference-inconsistent"
    _announce(2)


def test_criterion_03_feed_forward_motifs():
    values = {}
    for name in ("ffl", "ffl_branch"):
        P = load_fixture(name)
        values[name, 2] = betti_table(P, 2, 1)
        values[name, 3] = betti_table(P, 3, 1)
    assert values["ffl", 3].entries[(0, 1)] == 2
    assert values["ffl_branch", 3].entries[(0, 1)] == 3
    for name in ("ffl", "ffl_branch"):
        assert values[name, 3].entries[(0, 2)] == 0
        assert values[name, 2].entries[(0, 1)] == 1
        # degree-1 homology vanishes at both orders for q = 1
        assert values[name, 2].entries[(1, 1)] == 0
        assert values[name, 3].entries[(1, 1)] == 0
    # the (1, 2) cells are recomputation-authoritative (see ffl rows of the
    # compatibility report): invariant edges minus the one boundary line
    for name, expected in (("ffl", 2), ("ffl_branch", 3)):
        P = load_fixture(name)
        assert betti_table(P, 3, 1).entries[(1, 2)] == \
            brute_force_oracle(P, 3, 1).entries[(1, 2)] == expected
    _announce(3)


def test_criterion_04_motif_comparison_table():
    expect = {
        "loop4": {(0, 1, 2): 1, (1, 1, 2): 1,
                  (0, 1, 3): 4, (1, 1, 3): 0, (0, 2, 3): 0, (1, 2, 3): 4},
        "biparallel": {(0, 1, 2): 1, (1, 1, 2): 0,
                       (0, 1, 3): 3, (1, 1, 3): 1, (0, 2, 3): 1},
        "bifan": {(0, 1, 2): 1, (1, 1, 2): 1,
                  (0, 1, 3): 4, (1, 1, 3): 1, (1, 2, 3): 4},
    }
    for name, cells in expect.items():
        P = load_fixture(name)
        tables = {2: betti_table(P, 2, 1), 3: betti_table(P, 3, 1)}
        for (n, q, N), val in cells.items():
            assert tables[N].entries[(n, q)] == val, (name, n, q, N)
    # recomputation-authoritative cells, equal across both engines
    bip = load_fixture("biparallel")
    assert betti_table(bip, 3, 1).entries[(1, 2)] == \
        brute_force_oracle(bip, 3, 1).entries[(1, 2)] == 3
    bif = load_fixture("bifan")
    assert betti_table(bif, 3, 1).entries[(0, 2)] == \
        brute_force_oracle(bif, 3, 1).entries[(0, 2)] == 1
    _announce(4)


def test_criterion_05_torus_minimal_triangulation():
    start = time.time()
    P = load_fixture("torus_minimal")
    t = betti_table(P, 3, 2)
    o = brute_force_oracle(P, 3, 2)
    assert t == o
    # The published row (1, 18, 0 / 0, 9, 10) is internally impossible:
    # its n=0,q=1 entry forces rank(d^2) = 6 while its n=2,q=2 entry
    # forces rank(d^2) = 4.  Both engines agree on the row below, the
    # Poincare identity holds for it, and a 40-digit numeric rank
    # computation confirms ranks (7, 14, 6).
    assert [t.entries[(n, 1)] for n in range(3)] == [1, 14, 0]
    assert [t.entries[(n, 2)] for n in range(3)] == [0, 7, 8]
    for q in (1, 2):
        assert poincare_identity_check(P, 3, q).equal
    report = run_compat_report()
    torus_cells = [c for c in report.cells if c.fixture == "torus_minimal"]
    assert all(c.tier == "B" for c in torus_cells)
    assert {c.status for c in torus_cells} == {"match", "reference-inconsistent"}
    elapsed = time.time() - start
    assert elapsed < 60.0
    _announce(5, f"({elapsed:.1f}s, recomputed row documented in report)")


def test_criterion_06_property_sweeps():
    start = time.time()
    rng = random.Random(60606)
    graphs = 0
    max_dims = {2: 3, 3: 3, 4: 2}
    while graphs < 102:
        N = (2, 3, 4)[graphs % 3]
        max_dim = max_dims[N]
        g, P = bounded_random_complex(rng, N, max_dim, budget=260, p=0.33)
        graphs += 1

        # nilpotency on the invariant complex and chain closure
        assert omega_nilpotency(P, N, max_dim)
        for n in range(1, max_dim + 1):
            assert verify_chain_closure(P, N, n)

        # boundaries inside cycles, across the whole grid
        for n in range(max_dim + 1):
            for q in range(1, N):
                assert quotient_dim(cycle_space(P, n, q, N),
                                    boundary_space(P, n, q, N)) >= 0

        # bit-identical tables from the two engines
        table = betti_table(P, N, max_dim)
        assert table == brute_force_oracle(P, N, max_dim)

        # dimension-2 generators span exactly (raises on failure)
        omega2_decompose(P, N)

        # dimension-3 classification and the two-level intersection identity
        if len(P.paths(3)) <= 40:
            search = minimal_clusters(P, N, circuit_bound=6)
            for cluster in search.clusters:
                assert all(l in GAMMA_PATTERNS for l in cluster.labels)
        from mayerpath.structure import omega3_intersection_check
        assert omega3_intersection_check(P, N)

        # degree-1 kernel: spanned (possibly via flagged completions),
        # bounded by the circuit rank
        res = z1_generators(g, N)
        kernel, basis = z1_kernel_space(g, N)
        vecs = []
        for gen in res.generators:
            vec = [Scalar.zero(N)] * len(basis)
            for e, c in gen.chain.items():
                vec[basis.index(e)] = c
            assert kernel.contains(vec)
            vecs.append(tuple(vec))
        span_dim = Subspace.from_spanning(vecs, len(basis), N).dim if vecs else 0
        assert span_dim == kernel.dim

        # relabeling invariance, five permutations per graph
        labels = list(g.labels)
        for _ in range(5):
            shuffled = labels[:]
            rng.shuffle(shuffled)
            g2 = g.relabel(dict(zip(labels, shuffled)))
            t2 = betti_table(path_complex_from_digraph(g2, max_dim), N, max_dim)
            assert t2.entries == table.entries
            assert t2.omega_dims == table.omega_dims

    elapsed = time.time() - start
    assert graphs >= 100
    assert elapsed < 300.0
    _announce(6, f"({graphs} digraphs, {elapsed:.1f}s)")


def test_criterion_07_three_route_chain_exclusion():
    P = load_fixture("braid")
    label_index = {l: i for i, l in enumerate(P.labels)}
    targets = [("1", "2", "3", "4"), ("1", "2", "6", "4"), ("1", "5", "6", "4")]
    signs = [1, -1, 1]
    paths = P.paths(3)
    idx = {p: i for i, p in enumerate(paths)}
    for N in (2, 3, 4):
        one = Scalar.one(N)
        vec = [Scalar.zero(N)] * len(paths)
        for labels, sign in zip(targets, signs):
            p = tuple(label_index[l] for l in labels)
            vec[idx[p]] = one if sign > 0 else -one
        assert omega_nq(P, 3, 1, N).space.contains(vec)
        if N == 2:
            assert omega_full(P, 3, 2).space.contains(vec)
        else:
            assert not omega_nq(P, 3, 2, N).space.contains(vec)
            assert not omega_full(P, 3, N).space.contains(vec)
    _announce(7)


def test_criterion_08_admissibility_separations():
    for name, expected in (("loop4", False), ("biparallel", True), ("bifan", True)):
        g = load_digraph(name)
        li = {v: i for i, v in enumerate(g.labels)}
        cyc = UndirectedCycle.from_vertices(
            [li["1"], li["2"], li["3"], li["4"]], g.edge_set)
        assert is_admissible(cyc, 3) is expected, name
        assert is_admissible(cyc, 2)
    _announce(8)


def test_criterion_09_power_expansion_identity():
    for N in (2, 3, 4):
        for n_verts in (2, 3, 4, 5):
            for p in itertools.product(range(3), repeat=n_verts):
                for r in range(1, min(N, n_verts - 1) + 1):
                    assert kapranov_expansion_check(p, r, N), (p, r, N)
    _announce(9)


def test_criterion_10_cli_determinism(tmp_path):
    for name in ALL_FIXTURES:
        suffix = ".simplices" if fixture_kind(name) == "simplicial" else ".edges"
        path = tmp_path / f"{name}{suffix}"
        path.write_text(fixture_text(name))
        argv = [sys.executable, "-m", "mayerpath.cli", "betti",
                "--input", str(path), "--kind", fixture_kind(name),
                "--N", "3", "--format", "json"]
        runs = [subprocess.run(argv, capture_output=True) for _ in range(2)]
        assert runs[0].returncode == runs[1].returncode == 0, name
        assert runs[0].stdout == runs[1].stdout, name
        assert runs[0].stdout  # non-empty output
    _announce(10)
