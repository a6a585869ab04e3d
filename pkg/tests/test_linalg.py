import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mayerpath.cyclotomic import Scalar, zeta_power
from mayerpath.linalg import (
    AmbientMismatch,
    Matrix,
    NotASubspace,
    Subspace,
    in_span,
    intersect,
    nullspace,
    quotient_dim,
    rref,
)


def scal(N, v):
    return Scalar.from_rational(N, v)


def dense(N, rows):
    entries = {}
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            if v:
                entries[(r, c)] = v
    return Matrix(len(rows), len(rows[0]) if rows else 0, N, entries)


def loop4_boundary(N):
    """Edge boundary of the 4-node feedback loop, rows e1..e4."""
    xi = zeta_power(N, 1)
    one = Scalar.one(N)
    z = Scalar.zero(N)
    # columns: e12, e14, e32, e43
    return dense(N, [
        [xi, xi, z, z],
        [one, z, one, z],
        [z, z, xi, one],
        [z, one, z, xi],
    ])


def test_rref_identity():
    N = 3
    one, z = Scalar.one(N), Scalar.zero(N)
    m = dense(N, [[one, z, z], [z, one, z], [z, z, one]])
    red, rank, pivots = rref(m)
    assert rank == 3 and pivots == (0, 1, 2)
    assert red.entries == m.entries


def test_rref_duplicate_rows():
    N = 4
    xi, one, z = zeta_power(N, 1), Scalar.one(N), Scalar.zero(N)
    m = dense(N, [[xi, one, z], [xi, one, z]])
    _, rank, _ = rref(m)
    assert rank == 1


def test_loop4_boundary_full_rank_at_order_3():
    _, rank, _ = rref(loop4_boundary(3))
    assert rank == 4
    assert nullspace(loop4_boundary(3)).dim == 0


def test_loop4_boundary_kernel_at_order_2():
    space = nullspace(loop4_boundary(2))
    assert space.dim == 1
    one = Scalar.one(2)
    # e14 + e43 + e32 - e12 in column order (e12, e14, e32, e43)
    vec = (Scalar.from_rational(2, -1), one, one, one)
    assert space.contains(vec)


def test_nullspace_zero_matrix():
    N = 3
    m = Matrix(2, 2, N, {})
    assert nullspace(m).dim == 2


def test_rank_equals_transpose_rank_random():
    rng = random.Random(42)
    for N in (2, 3, 4):
        for _ in range(40):
            rows = rng.randint(1, 8)
            cols = rng.randint(1, 8)
            entries = {}
            for r in range(rows):
                for c in range(cols):
                    if rng.random() < 0.4:
                        entries[(r, c)] = zeta_power(N, rng.randrange(N)) * \
                            Fraction(rng.randint(-3, 3))
            m = Matrix(rows, cols, N, entries)
            _, rank, _ = rref(m)
            _, rank_t, _ = rref(m.transpose())
            assert rank == rank_t


def _random_vectors(rng, N, ambient, count):
    vecs = []
    for _ in range(count):
        vecs.append(tuple(
            zeta_power(N, rng.randrange(N)) * Fraction(rng.randint(-2, 2))
            for _ in range(ambient)
        ))
    return vecs


def test_subspace_canonical_under_shuffle_and_recombination():
    rng = random.Random(5)
    N = 3
    for _ in range(25):
        ambient = rng.randint(2, 6)
        vecs = _random_vectors(rng, N, ambient, rng.randint(1, 4))
        s1 = Subspace.from_spanning(vecs, ambient, N)
        shuffled = list(vecs)
        rng.shuffle(shuffled)
        # throw in sums of pairs; the span is unchanged
        if len(shuffled) >= 2:
            shuffled.append(tuple(a + b for a, b in zip(shuffled[0], shuffled[1])))
        s2 = Subspace.from_spanning(shuffled, ambient, N)
        assert s1 == s2
        assert s1.basis == s2.basis


def test_intersect_examples():
    N = 3
    one, z = Scalar.one(N), Scalar.zero(N)
    a = Subspace.from_spanning([(one, z)], 2, N)
    b = Subspace.from_spanning([(z, one)], 2, N)
    assert intersect(a, b).dim == 0
    assert intersect(a, a) == a


def test_intersect_properties_random():
    rng = random.Random(99)
    N = 3
    for _ in range(20):
        ambient = rng.randint(2, 5)
        a = Subspace.from_spanning(_random_vectors(rng, N, ambient, 2), ambient, N)
        b = Subspace.from_spanning(_random_vectors(rng, N, ambient, 2), ambient, N)
        c = Subspace.from_spanning(_random_vectors(rng, N, ambient, 2), ambient, N)
        assert intersect(a, b) == intersect(b, a)
        assert intersect(a, intersect(b, c)) == intersect(intersect(a, b), c)
        assert intersect(a, a) == a
        assert intersect(a, b).dim <= min(a.dim, b.dim)


def test_quotient_dim():
    N = 3
    full = Subspace.full_space(4, N)
    one, z = Scalar.one(N), Scalar.zero(N)
    b = Subspace.from_spanning(
        [(one, z, z, z), (z, one, z, z), (z, z, one, z)], 4, N)
    assert quotient_dim(full, b) == 1
    assert quotient_dim(b, b) == 0
    assert quotient_dim(b, Subspace.zero_space(4, N)) == 3
    outside = Subspace.from_spanning([(z, z, z, one)], 4, N)
    with pytest.raises(NotASubspace):
        quotient_dim(b, outside)


def test_in_span():
    N = 3
    one, z = Scalar.one(N), Scalar.zero(N)
    s = Subspace.from_spanning([(one, one, z)], 3, N)
    assert in_span((z, z, z), s)
    assert in_span(s.basis[0], s)
    assert not in_span((one, z, z), s)


def test_ambient_mismatch():
    N = 3
    a = Subspace.full_space(2, N)
    b = Subspace.full_space(3, N)
    with pytest.raises(AmbientMismatch):
        intersect(a, b)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), N=st.sampled_from((2, 3, 4)))
def test_span_membership_closed_under_combination(data, N):
    ambient = data.draw(st.integers(2, 5))
    coeff = st.integers(-3, 3)
    vecs = data.draw(st.lists(
        st.tuples(*[coeff] * ambient), min_size=1, max_size=3))
    scalars = [tuple(Scalar.from_rational(N, c) for c in v) for v in vecs]
    s = Subspace.from_spanning(scalars, ambient, N)
    weights = data.draw(st.lists(coeff, min_size=len(vecs), max_size=len(vecs)))
    combo = [Scalar.zero(N)] * ambient
    for w, vec in zip(weights, scalars):
        combo = [a + Scalar.from_rational(N, w) * b for a, b in zip(combo, vec)]
    assert in_span(combo, s)


def test_matrix_dump_has_labels():
    N = 2
    m = loop4_boundary(N)
    text = m.dump(row_labels=["e1", "e2", "e3", "e4"],
                  col_labels=["e12", "e14", "e32", "e43"])
    assert "e12" in text and "e4" in text
