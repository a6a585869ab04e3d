"""The root-of-unity weighted boundary operator and its matrix powers.

The operator sends e_{i0...ip} to sum_j zeta^j e_{i0...î_j...ip}.  Two
variants matter:

* the regular operator drops faces with equal consecutive vertices from
  the image (this is the one all homology downstream uses), and
* the free (non-regular) operator keeps them; on the free module the
  N-th power vanishes identically because [N!]_q = 0.

Powers of the regular operator are computed by iterating it through the
full regular span, so intermediate irregular faces are dropped at every
step, not only at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import PathComplex, Path, face, is_regular
from .cyclotomic import Scalar, q_factorial, zeta_power
from .linalg import Matrix

Chain = dict[Path, Scalar]


def _add_term(chain: Chain, p: Path, coeff: Scalar) -> None:
    cur = chain.get(p)
    new = coeff if cur is None else cur + coeff
    if new:
        chain[p] = new
    else:
        chain.pop(p, None)


def render_chain(P: PathComplex, chain: Chain) -> str:
    """Debug rendering like ``(1)*e_{1,2,3} + (-z)*e_{1,3,4}``."""
    if not chain:
        return "0"
    return " + ".join(
        f"({chain[p].render()})*{P.path_label(p)}" for p in sorted(chain)
    )


def boundary_chain(p: Path, N: int) -> Chain:
    """Regular boundary of one elementary path; zero chain for vertices."""
    out: Chain = {}
    if len(p) <= 1:
        return out
    for j in range(len(p)):
        f = face(p, j)
        if is_regular(f):
            _add_term(out, f, zeta_power(N, j))
    return out


def apply_regular_boundary(chain: Chain, N: int) -> Chain:
    out: Chain = {}
    for p, c in chain.items():
        if len(p) <= 1:
            continue
        for j in range(len(p)):
            f = face(p, j)
            if is_regular(f):
                _add_term(out, f, c * zeta_power(N, j))
    return out


def apply_regular_power(chain: Chain, q: int, N: int) -> Chain:
    for _ in range(q):
        chain = apply_regular_boundary(chain, N)
    return chain


@dataclass
class BoundaryMatrix:
    """Matrix of the q-th regular boundary power on the allowed n-path basis.

    Columns follow the lexicographic allowed basis in dimension n.  Rows
    cover dimension n-q: first every allowed (n-q)-path, then the
    non-allowed regular paths actually reached, both lexicographically.
    """

    n: int
    q: int
    order: int
    col_paths: tuple[Path, ...]
    row_paths: tuple[Path, ...]
    allowed_rows: int
    entries: dict[tuple[int, int], Scalar]

    @property
    def matrix(self) -> Matrix:
        return Matrix(len(self.row_paths), len(self.col_paths), self.order, self.entries)

    def nonallowed_block(self) -> Matrix:
        entries = {
            (r - self.allowed_rows, c): v
            for (r, c), v in self.entries.items()
            if r >= self.allowed_rows
        }
        return Matrix(len(self.row_paths) - self.allowed_rows, len(self.col_paths),
                      self.order, entries)

    def allowed_block(self) -> Matrix:
        entries = {(r, c): v for (r, c), v in self.entries.items() if r < self.allowed_rows}
        return Matrix(self.allowed_rows, len(self.col_paths), self.order, entries)


def boundary_power_matrix(P: PathComplex, n: int, q: int, N: int) -> BoundaryMatrix:
    """Assemble the matrix of the q-th power of the regular boundary."""
    if q < 1:
        raise ValueError("power must be >= 1")
    key = ("bpm", n, q, N)
    cached = P._memo.get(key)
    if cached is not None:
        return cached

    cols = P.paths(n)
    one = Scalar.one(N)
    col_chains: list[Chain] = []
    for p in cols:
        col_chains.append(apply_regular_power({p: one}, q, N))

    if n - q < 0:
        result = BoundaryMatrix(n, q, N, cols, (), 0, {})
        P._memo[key] = result
        return result

    allowed = P.paths(n - q)
    allowed_index = {p: i for i, p in enumerate(allowed)}
    extras = sorted({p for chain in col_chains for p in chain} - set(allowed))
    row_paths = tuple(allowed) + tuple(extras)
    row_index = dict(allowed_index)
    for i, p in enumerate(extras):
        row_index[p] = len(allowed) + i

    entries: dict[tuple[int, int], Scalar] = {}
    for c, chain in enumerate(col_chains):
        for p, v in chain.items():
            entries[(row_index[p], c)] = v
    result = BoundaryMatrix(n, q, N, cols, row_paths, len(allowed), entries)
    P._memo[key] = result
    return result


def verify_nilpotency(P: PathComplex, N: int, n_max: int) -> bool:
    """Does the N-th regular boundary power vanish on every allowed basis?

    The power is taken through the full regular span reached from the
    allowed n-paths.  This holds for simplicial complexes and acyclic
    digraphs; a digraph whose walks revisit a vertex two steps apart can
    defeat it, because dropped irregular faces no longer cancel.
    """
    one = Scalar.one(N)
    for n in range(n_max + 1):
        for p in P.paths(n):
            if apply_regular_power({p: one}, N, N):
                return False
    return True


# -- the free (non-regular) operator ------------------------------------


def nonregular_boundary_chain(p: Path, N: int) -> Chain:
    """Boundary on the free module over all elementary paths."""
    out: Chain = {}
    if len(p) <= 1:
        return out
    for j in range(len(p)):
        _add_term(out, face(p, j), zeta_power(N, j))
    return out


def nonregular_power(p: Path, r: int, N: int) -> Chain:
    chain: Chain = {p: Scalar.one(N)}
    for _ in range(r):
        out: Chain = {}
        for pp, c in chain.items():
            if len(pp) <= 1:
                continue
            for j in range(len(pp)):
                _add_term(out, face(pp, j), c * zeta_power(N, j))
        chain = out
    return chain


def kapranov_expansion_check(p: Path, r: int, N: int) -> bool:
    """Check the closed form of the r-th boundary power on the free module.

    With 0-based deletion positions the iterated operator expands as

        d^r = [r!]_q * sum over j_1 < ... < j_r of
              q^(j_1 + ... + j_r - r(r-1)/2) * (delete positions j_1..j_r)

    The exponent shift r(r-1)/2 accounts for index slippage when the
    deletions are performed one at a time.  For r >= N both sides vanish
    since [N!]_q = 0.
    """
    if not 1 <= r <= len(p):
        raise ValueError("power out of range for this path")
    lhs = nonregular_power(p, r, N)

    from itertools import combinations

    factor = q_factorial(N, r)
    shift = r * (r - 1) // 2
    rhs: Chain = {}
    if factor:
        for subset in combinations(range(len(p)), r):
            if len(subset) == len(p):
                continue  # deleting every vertex leaves nothing below dim 0
            remaining = tuple(v for i, v in enumerate(p) if i not in subset)
            coeff = factor * zeta_power(N, sum(subset) - shift)
            _add_term(rhs, remaining, coeff)
    return lhs == rhs
