"""Classification of invariant 2- and 3-chains of a digraph path complex.

Dimension 2 decomposes into double edges, triangles and squares; in
dimension 3 every component of a minimal cluster carries one of nine
face-type patterns (g1..g9), and minimal clusters are chains of
g7-components capped by compatible endpoint types, plus the isolated
patterns g8 and g9 and pure-g7 polygons.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .boundary import boundary_power_matrix
from .complexes import Path, PathComplex
from .cyclotomic import Scalar, zeta_power
from .linalg import Matrix, Subspace, intersect, nullspace
from .omega import omega_full, omega_nq


class SpanMismatch(RuntimeError):
    """The emitted generators do not span the computed invariant space."""


class NotMayerForm(ValueError):
    """Chain is not of the single-anchor root-of-unity square-sum shape."""


class FaceType(Enum):
    T = "T"    # shortcut edge present
    S = "S"    # no shortcut, but an alternative middle exists
    W = "W"    # allowed with neither shortcut nor alternative
    NW = "Nw"  # not an allowed path

    def __str__(self) -> str:
        return self.value


GAMMA_PATTERNS: dict[int, tuple[FaceType, FaceType, FaceType, FaceType]] = {
    1: (FaceType.S, FaceType.T, FaceType.NW, FaceType.T),
    2: (FaceType.S, FaceType.S, FaceType.NW, FaceType.T),
    3: (FaceType.S, FaceType.W, FaceType.NW, FaceType.T),
    4: (FaceType.T, FaceType.NW, FaceType.T, FaceType.S),
    5: (FaceType.T, FaceType.NW, FaceType.S, FaceType.S),
    6: (FaceType.T, FaceType.NW, FaceType.W, FaceType.S),
    7: (FaceType.S, FaceType.NW, FaceType.NW, FaceType.S),
    8: (FaceType.T, FaceType.S, FaceType.S, FaceType.T),
    9: (FaceType.T, FaceType.T, FaceType.T, FaceType.T),
}
_PATTERN_TO_GAMMA = {v: k for k, v in GAMMA_PATTERNS.items()}


def face_type(P: PathComplex, f: Path, shortcut: tuple[int, int] | None = None) -> FaceType:
    """Classify a 2-path face by its endpoints' connectivity.

    Priority: non-allowed beats everything; then a shortcut edge (T),
    then an alternative allowed middle (S), else W.
    """
    if len(f) != 3:
        raise ValueError("face classification applies to 2-paths")
    a, mid, c = f
    if shortcut is None:
        shortcut = (a, c)
    if not P.is_allowed(f):
        return FaceType.NW
    if P.has_edge(*shortcut):
        return FaceType.T
    for alt in P.paths(2):
        if alt[0] == a and alt[2] == c and alt[1] != mid:
            return FaceType.S
    return FaceType.W


def image_type(P: PathComplex, v: Path) -> tuple[FaceType, FaceType, FaceType, FaceType]:
    """Face types of (jkl, ikl, ijl, ijk) for an allowed 3-path ijkl."""
    if len(v) != 4:
        raise ValueError("image type applies to 3-paths")
    i, j, k, l = v

    def classify(face: Path) -> FaceType:
        if any(face[t] == face[t + 1] for t in range(2)):
            return FaceType.NW  # irregular faces are never allowed
        return face_type(P, face)

    return (classify((j, k, l)), classify((i, k, l)),
            classify((i, j, l)), classify((i, j, k)))


def gamma_label(P: PathComplex, v: Path) -> int | None:
    """Index 1..9 of the matching pattern, or None outside the table."""
    return _PATTERN_TO_GAMMA.get(image_type(P, v))


# -- dimension 2 -----------------------------------------------------------


@dataclass
class Omega2Generator:
    kind: str            # "double_edge" | "triangle" | "square"
    paths: tuple[Path, ...]
    vector: dict[Path, Scalar]

    def render(self, P: PathComplex) -> str:
        parts = []
        for p, c in self.vector.items():
            parts.append(f"({c.render()})*{P.path_label(p)}")
        return " + ".join(parts)


def omega2_decompose(P: PathComplex, N: int) -> list[Omega2Generator]:
    """Double-edge / triangle / square generating set of Omega_2^N.

    Squares between a non-adjacent pair are anchored at the least middle
    vertex.  The emitted span is asserted to equal the computed invariant
    space; a mismatch would disprove the classification and is fatal.
    """
    one = Scalar.one(N)
    gens: list[Omega2Generator] = []
    by_endpoints: dict[tuple[int, int], list[Path]] = {}
    for p in P.paths(2):
        i, j, k = p
        if i == k:
            gens.append(Omega2Generator("double_edge", (p,), {p: one}))
        elif P.has_edge(i, k):
            gens.append(Omega2Generator("triangle", (p,), {p: one}))
        else:
            by_endpoints.setdefault((i, k), []).append(p)
    for (i, k), middles in sorted(by_endpoints.items()):
        middles.sort()
        anchor = middles[0]
        for other in middles[1:]:
            gens.append(Omega2Generator("square", (anchor, other),
                                        {anchor: one, other: -one}))

    paths = P.paths(2)
    index = {p: i for i, p in enumerate(paths)}
    zero = Scalar.zero(N)
    vectors = []
    for g in gens:
        vec = [zero] * len(paths)
        for p, c in g.vector.items():
            vec[index[p]] = c
        vectors.append(tuple(vec))
    span = Subspace.from_spanning(vectors, len(paths), N)
    target = omega_full(P, 2, N).space
    if span != target:
        raise SpanMismatch(
            f"2-chain generators span dim {span.dim}, invariant space has dim {target.dim}"
        )
    return gens


def mayer_square_reduce(P: PathComplex, N: int, chain: dict[Path, Scalar]):
    """Rewrite an anchored root-of-unity sum of 2-paths as signed squares.

    Input shape: anchor path with coefficient 1 plus partners carrying
    distinct powers zeta^m (1 <= m <= N-1), all sharing both endpoints.
    Returns [(coefficient, (anchor, partner)), ...] with coefficients
    -zeta^m, whose sum reproduces the input exactly.
    """
    items = [(p, c) for p, c in chain.items() if c]
    if len(items) < 2:
        raise NotMayerForm("need at least two paths")
    endpoints = {(p[0], p[-1]) for p, _ in items}
    if len(endpoints) != 1:
        raise NotMayerForm("paths do not share endpoints")
    (i, k) = endpoints.pop()
    for p, _ in items:
        if len(p) != 3 or p[1] in (i, k):
            raise NotMayerForm("middles must be distinct from the endpoints")
        if not P.is_allowed(p):
            raise NotMayerForm(f"non-allowed component {p}")

    powers = {m: zeta_power(N, m) for m in range(1, N)}
    one = Scalar.one(N)
    for anchor, c_anchor in sorted(items):
        rest = [(p, c) for p, c in items if p != anchor]
        used: dict[Path, int] = {}
        taken: set[int] = set()
        ok = True
        for p, c in rest:
            m = next((m for m, z in powers.items() if m not in taken and z == c), None)
            if m is None:
                ok = False
                break
            used[p] = m
            taken.add(m)
        if not ok:
            continue
        unused_sum = sum((powers[m] for m in powers if m not in taken),
                         start=Scalar.zero(N))
        if c_anchor != one + unused_sum:
            continue
        return [(-powers[m], (anchor, p)) for p, m in sorted(used.items())]
    raise NotMayerForm("no anchor assignment matches the required shape")


# -- dimension 3 -----------------------------------------------------------


@dataclass
class ClusterReport:
    endpoints: tuple[int, int]
    components: tuple[tuple[Path, Scalar], ...]
    labels: tuple[int | None, ...]
    family: str | None   # "T1".."T6"
    chain: str | None    # e.g. "g2-(g7)^1-g5" for chain-shaped clusters


@dataclass
class ClusterSearch:
    clusters: list[ClusterReport]
    truncated: list[tuple[int, int]]  # endpoint pairs where the bound was hit


def _family_of(labels: tuple[int | None, ...]) -> str | None:
    s = set(labels)
    if None in s:
        return None
    if s == {9}:
        return "T5"
    if s == {8}:
        return "T6"
    if s == {7}:
        return "T4"
    if s <= {1, 4, 7}:
        return "T1"
    if s <= {2, 5, 7}:
        return "T2"
    if s <= {3, 6, 7}:
        return "T3"
    return None


def _nw_faces(P: PathComplex, v: Path) -> set[Path]:
    faces = {(v[0], v[2], v[3]), (v[0], v[1], v[3])}
    out = set()
    for f in faces:
        if any(f[t] == f[t + 1] for t in range(2)) or not P.is_allowed(f):
            out.add(f)
    return out


def _chain_shape(P: PathComplex, comps: list[Path], labels) -> str | None:
    """Render a path-shaped cluster as 'gi-(g7)^m-gj'; None if not a chain."""
    if len(comps) == 1:
        return f"g{labels[0]}" if labels[0] else None
    adj = {i: set() for i in range(len(comps))}
    for a, b in combinations(range(len(comps)), 2):
        if _nw_faces(P, comps[a]) & _nw_faces(P, comps[b]):
            adj[a].add(b)
            adj[b].add(a)
    degs = sorted(len(v) for v in adj.values())
    if degs.count(1) != 2 or any(d == 0 or d > 2 for d in degs):
        return None  # a polygon (pure g7) or something stranger
    start = min(i for i in adj if len(adj[i]) == 1)
    order = [start]
    while len(order) < len(comps):
        nxt = [x for x in adj[order[-1]] if x not in order]
        if not nxt:
            return None
        order.append(nxt[0])
    seq = [labels[i] for i in order]
    if any(l is None for l in seq):
        return None
    if seq[0] == 7 and seq[-1] != 7:
        seq.reverse()
    middle = seq[1:-1]
    if len(seq) >= 2 and all(l == 7 for l in middle):
        return f"g{seq[0]}-(g7)^{len(middle)}-g{seq[-1]}"
    return "-".join(f"g{l}" for l in seq)


def minimal_clusters(P: PathComplex, N: int, dim: int = 3,
                     circuit_bound: int = 8) -> ClusterSearch:
    """Minimal-support invariant elements of the level-(N,1) space in dim 3.

    Elements split by endpoint pair; within one cluster the minimal
    supports are the circuits of the constraint system, found by
    increasing-support search with superset pruning.  Endpoint pairs
    where the support bound is exceeded are reported, never silently
    truncated.
    """
    if dim != 3:
        raise ValueError("cluster classification is implemented for dimension 3")
    block = boundary_power_matrix(P, 3, 1, N).nonallowed_block()
    paths = P.paths(3)
    by_pair: dict[tuple[int, int], list[int]] = {}
    for idx, p in enumerate(paths):
        by_pair.setdefault((p[0], p[-1]), []).append(idx)

    rows = block.row_dicts()
    clusters: list[ClusterReport] = []
    truncated: list[tuple[int, int]] = []

    for pair, col_idx in sorted(by_pair.items()):
        pos = {c: i for i, c in enumerate(col_idx)}
        sub_rows = []
        for row in rows:
            local = {pos[c]: v for c, v in row.items() if c in pos}
            if local:
                sub_rows.append(local)
        # quick exit when the whole cluster contributes nothing
        cluster_space = nullspace(Matrix.from_row_dicts(sub_rows, len(col_idx), N))
        if cluster_space.dim == 0:
            continue

        found: list[set[int]] = []
        support_limit = min(circuit_bound, len(col_idx))
        if len(col_idx) > circuit_bound:
            truncated.append(pair)
        for size in range(1, support_limit + 1):
            for subset in combinations(range(len(col_idx)), size):
                sset = set(subset)
                if any(f <= sset for f in found):
                    continue
                remap = {c: i for i, c in enumerate(subset)}
                local_rows = []
                for row in sub_rows:
                    r = {remap[c]: v for c, v in row.items() if c in remap}
                    if r:
                        local_rows.append(r)
                space = nullspace(Matrix.from_row_dicts(local_rows, size, N))
                if space.dim == 0:
                    continue
                assert space.dim == 1, "minimal support cannot carry dim > 1"
                vec = space.basis[0]
                if not all(vec):
                    continue  # support is a proper subset; smaller circuit pending
                found.append(sset)
                comps = [paths[col_idx[i]] for i in subset]
                labels = tuple(gamma_label(P, c) for c in comps)
                components = tuple((c, vec[i]) for i, c in enumerate(comps))
                clusters.append(ClusterReport(
                    endpoints=pair,
                    components=components,
                    labels=labels,
                    family=_family_of(labels),
                    chain=_chain_shape(P, comps, labels),
                ))
    return ClusterSearch(clusters, truncated)


def special_edges(P: PathComplex) -> dict[str, list[tuple[int, int]]]:
    """Non-adjacent pairs bridged by 2-paths: >= 2 middles vs exactly one."""
    middles: dict[tuple[int, int], set[int]] = {}
    for p in P.paths(2):
        i, j, k = p
        if i != k and not P.has_edge(i, k):
            middles.setdefault((i, k), set()).add(j)
    connecting = sorted(pair for pair, ms in middles.items() if len(ms) >= 2)
    complementary = sorted(pair for pair, ms in middles.items() if len(ms) == 1)
    return {"connecting": connecting, "complementary": complementary}


def omega3_intersection_check(P: PathComplex, N: int) -> bool:
    """Is the full dim-3 invariant space cut out by levels q=1 and q=2 alone?"""
    full = omega_full(P, 3, N).space
    first = omega_nq(P, 3, 1, N).space
    if N == 2:
        return full == first
    return full == intersect(first, omega_nq(P, 3, 2, N).space)
