"""Exact lattice-algebra engine for arbitrary integer vector configurations.

Nothing here knows about graphs beyond ``VectorConfig.from_graph``; it is the
independent ground truth the walk classifiers are checked against.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .binomial import Binomial
from .budget import Budget
from .graph import Graph
from .lp import feasible_point

# int64 fast path is used while all entries stay below this bound
_FAST_BOUND = 1 << 40


class NotPointedError(ValueError):
    pass


@dataclass(frozen=True)
class VectorConfig:
    matrix: tuple[tuple[int, ...], ...]
    column_names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "matrix", rows)
        for j in range(len(rows[0])):
            if all(r[j] == 0 for r in rows):
                raise ValueError(f"column {j} is zero")

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.matrix)

    def degree(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, x)) for r in self.matrix)

    @classmethod
    def from_graph(cls, g: Graph) -> "VectorConfig":
        m = [[0] * g.edge_count for _ in range(g.vertex_count)]
        for e, (u, v) in enumerate(g.edges):
            m[u][e] = 1
            m[v][e] = 1
        return cls(tuple(tuple(r) for r in m), tuple(f"e{i + 1}" for i in range(g.edge_count)))

    @classmethod
    def from_text(cls, text: str) -> "VectorConfig":
        """Parse ``rows cols`` followed by row-major integers."""
        tokens = [t for line in text.splitlines() if not line.strip().startswith("#") for t in line.split()]
        if len(tokens) < 2:
            raise ValueError("matrix text too short")
        r, c = int(tokens[0]), int(tokens[1])
        vals = [int(t) for t in tokens[2:]]
        if len(vals) != r * c:
            raise ValueError(f"expected {r * c} entries, found {len(vals)}")
        return cls(tuple(tuple(vals[i * c:(i + 1) * c]) for i in range(r)))

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"] + [" ".join(map(str, r)) for r in self.matrix]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LatticeVector:
    entries: tuple[int, ...]

    @property
    def positive_part(self) -> tuple[int, ...]:
        return tuple(max(x, 0) for x in self.entries)

    @property
    def negative_part(self) -> tuple[int, ...]:
        return tuple(max(-x, 0) for x in self.entries)

    @property
    def degree(self) -> int:
        return max(sum(self.positive_part), sum(self.negative_part))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.entries) if x)

    def canonical(self) -> "LatticeVector":
        for x in self.entries:
            if x:
                return self if x > 0 else -self
        return self

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-x for x in self.entries))

    def to_binomial(self) -> Binomial:
        return Binomial.from_vector(self.entries)

    def sort_key(self):
        return (self.degree, self.positive_part, self.negative_part)


@dataclass(frozen=True)
class LatticeBasis:
    """A named set of lattice vectors, flagged when a degree cap may have cut it short."""

    elements: tuple[LatticeVector, ...]
    truncated: bool = False

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item):
        return item in set(self.elements)

    def binomials(self) -> tuple[Binomial, ...]:
        return tuple(v.to_binomial() for v in self.elements)


@dataclass(frozen=True)
class Fiber:
    degree: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class MarkovBasis:
    elements: tuple[LatticeVector, ...]
    indispensable: frozenset[LatticeVector]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _sorted_vectors(vs: Iterable[LatticeVector]) -> tuple[LatticeVector, ...]:
    return tuple(sorted(set(vs), key=LatticeVector.sort_key))


# ---------------------------------------------------------------------------
# Kernel
# ---------------------------------------------------------------------------

def _integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x in Z^ncols : rows . x = 0} by unimodular row reduction of [A^T | I]."""
    nrows = len(rows)
    work = [[rows[i][j] for i in range(nrows)] + [1 if k == j else 0 for k in range(ncols)]
            for j in range(ncols)]
    pivot_row = 0
    for col in range(nrows):
        while True:
            live = [r for r in range(pivot_row, ncols) if work[r][col] != 0]
            if not live:
                break
            p = min(live, key=lambda r: abs(work[r][col]))
            work[pivot_row], work[p] = work[p], work[pivot_row]
            pv = work[pivot_row][col]
            done = True
            for r in range(pivot_row + 1, ncols):
                x = work[r][col]
                if x:
                    q = x // pv
                    if q:
                        prow = work[pivot_row]
                        row = work[r]
                        for k in range(col, nrows + ncols):
                            row[k] -= q * prow[k]
                    if work[r][col]:
                        done = False
            if done:
                pivot_row += 1
                break
    kernel = [row[nrows:] for row in work[pivot_row:]]
    return _size_reduce(kernel)


def _size_reduce(basis: list[list[int]]) -> list[list[int]]:
    # pairwise 1-norm reduction keeps completion inputs small
    basis = [list(b) for b in basis]
    changed = True
    while changed:
        changed = False
        basis.sort(key=lambda v: sum(map(abs, v)))
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                bi, bj = basis[i], basis[j]
                ni = sum(map(abs, bi))
                for s in (1, -1):
                    cand = [a - s * b for a, b in zip(bi, bj)]
                    if sum(map(abs, cand)) < ni:
                        basis[i] = bi = cand
                        ni = sum(map(abs, cand))
                        changed = True
    return basis


def kernel_lattice(A: VectorConfig) -> list[LatticeVector]:
    vecs = _integer_kernel(A.matrix, A.cols)
    return [LatticeVector(tuple(v)).canonical() for v in vecs]


# ---------------------------------------------------------------------------
# Pointedness and positive gradings
# ---------------------------------------------------------------------------

def _positive_functional(A: VectorConfig) -> tuple[int, ...] | None:
    """Integer ``y`` with ``y . a_j > 0`` for every column, or None."""
    if all(x >= 0 for r in A.matrix for x in r):
        return (1,) * A.rows
    point = feasible_point(ge=[(A.column(j), 1) for j in range(A.cols)], nvars=A.rows)
    if point is None:
        return None
    den = lcm(*(x.denominator for x in point))
    return tuple(int(x * den) for x in point)


def is_pointed(A: VectorConfig) -> bool:
    return _positive_functional(A) is not None


# ---------------------------------------------------------------------------
# Graver basis by completion
# ---------------------------------------------------------------------------

def divides(u: LatticeVector, v: LatticeVector) -> bool:
    """True iff ``u+ <= v+`` and ``u- <= v-`` componentwise."""
    if len(u.entries) != len(v.entries):
        raise ValueError("dimension mismatch")
    return all(a == 0 or (0 < a <= b if a > 0 else b <= a < 0) for a, b in zip(u.entries, v.entries))


class _Reducer:
    """Growing symmetric generating set with vectorized sign-compatible reduction."""

    def __init__(self, dim: int, fast: bool):
        self.dtype = np.int64 if fast else object
        self.mat = np.zeros((16, dim), dtype=self.dtype)
        self.size = 0

    def rows(self):
        return self.mat[: self.size]

    def add(self, vec: np.ndarray):
        if self.size == len(self.mat):
            grown = np.zeros((2 * len(self.mat), self.mat.shape[1]), dtype=self.dtype)
            grown[: self.size] = self.mat[: self.size]
            self.mat = grown
        self.mat[self.size] = vec
        self.size += 1

    def reducers_of(self, s: np.ndarray) -> np.ndarray:
        g = self.rows()
        return ((g * s >= 0) & (np.abs(g) <= np.abs(s))).all(axis=1)

    def normal_form(self, s: np.ndarray) -> np.ndarray:
        while s.any():
            hits = np.flatnonzero(self.reducers_of(s))
            if not len(hits):
                break
            s = s - self.mat[hits[0]]
        return s


def graver(A: VectorConfig, degree_cap: int | None = None, budget: Budget | None = None) -> LatticeBasis:
    """Primitive kernel vectors of ``A``, sign-canonical, by the completion procedure.

    With ``degree_cap`` the completion discards candidates whose 1-norm exceeds twice
    the cap; the result is then flagged ``truncated`` whenever anything was discarded.
    """
    basis = _integer_kernel(A.matrix, A.cols)
    if not basis:
        return LatticeBasis(())
    if len(basis) == 1:
        v = LatticeVector(tuple(basis[0])).canonical()
        if degree_cap is not None and v.degree > degree_cap:
            return LatticeBasis((), truncated=True)
        return LatticeBasis((v,))
    if degree_cap is None and not is_pointed(A):
        raise NotPointedError("completion may not terminate meaningfully; cap required")
    norm_cap = None if degree_cap is None else 2 * degree_cap
    fast = max(abs(x) for b in basis for x in b) < _FAST_BOUND
    dtype = np.int64 if fast else object
    red = _Reducer(A.cols, fast)
    queue: list[tuple[int, tuple[int, ...]]] = []
    queued: set[tuple[int, ...]] = set()
    truncated = False

    def push(vec: np.ndarray):
        nonlocal truncated
        norm = int(np.abs(vec).sum())
        if norm == 0:
            return
        if norm_cap is not None and norm > norm_cap:
            truncated = True
            return
        key = tuple(int(x) for x in vec)
        if key not in queued:
            queued.add(key)
            heapq.heappush(queue, (norm, key))

    def insert(f: np.ndarray):
        for s in (f, -f):
            g = red.rows()
            if red.size:
                # sums of sign-compatible pairs reduce to zero and are skipped
                clash = ~((g * s) >= 0).all(axis=1)
                for idx in np.flatnonzero(clash):
                    push(s + g[idx])
            red.add(s)

    for b in basis:
        insert(np.array(b, dtype=dtype))
    steps = 0
    while queue:
        _, key = heapq.heappop(queue)
        steps += 1
        if budget is not None and steps % 256 == 0:
            budget.check()
        r = red.normal_form(np.array(key, dtype=dtype))
        if r.any():
            if fast and np.abs(r).max() >= _FAST_BOUND:
                raise OverflowError("completion left the 64-bit fast path")
            insert(r)

    rows = red.rows()
    out = set()
    for i in range(red.size):
        s = rows[i]
        hits = red.reducers_of(s)
        hits[i] = False
        # a reducer equal to s itself (duplicate) does not disqualify
        if any(not np.array_equal(rows[j], s) for j in np.flatnonzero(hits)):
            continue
        v = LatticeVector(tuple(int(x) for x in s)).canonical()
        if degree_cap is None or v.degree <= degree_cap:
            out.add(v)
    return LatticeBasis(_sorted_vectors(out), truncated)


# ---------------------------------------------------------------------------
# Circuits
# ---------------------------------------------------------------------------

def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return tuple(x // g for x in vec) if g > 1 else tuple(vec)


def circuits(A: VectorConfig) -> LatticeBasis:
    """Support-minimal kernel vectors.

    A column set ``T`` of size rank+1 has a one-dimensional kernel exactly when the
    kernel basis restricted to the complementary ``k - 1`` columns has a
    one-dimensional left null space; that line gives the circuit supported in ``T``.
    """
    kbasis = _integer_kernel(A.matrix, A.cols)
    k = len(kbasis)
    if k == 0:
        return LatticeBasis(())
    found = set()
    for comp in combinations(range(A.cols), k - 1):
        # rows of the transposed restriction: one per complementary column
        sub = [[kbasis[i][c] for i in range(k)] for c in comp]
        null = _integer_kernel(sub, k) if sub else [[1]]
        if len(null) != 1:
            continue
        lam = null[0]
        vec = [sum(lam[i] * kbasis[i][j] for i in range(k)) for j in range(A.cols)]
        if any(vec):
            found.add(LatticeVector(_primitive(vec)).canonical())
    supports = {v: v.support for v in found}
    minimal = [v for v in found if not any(supports[w] < supports[v] for w in found)]
    return LatticeBasis(_sorted_vectors(minimal))


# ---------------------------------------------------------------------------
# Fibers
# ---------------------------------------------------------------------------

def fiber(A: VectorConfig, b: Sequence[int]) -> Fiber:
    """All nonnegative integer ``x`` with ``A x = b``."""
    c = _positive_functional(A)
    if c is None:
        raise NotPointedError("infinite fiber possible")
    b = tuple(int(x) for x in b)
    cols = [A.column(j) for j in range(A.cols)]
    weight = [sum(ci * ai for ci, ai in zip(c, col)) for col in cols]
    n = A.cols
    # rows still reachable by columns j..n-1
    reach = [set() for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        reach[j] = reach[j + 1] | {i for i, x in enumerate(cols[j]) if x}
    nonneg = all(x >= 0 for r in A.matrix for x in r)
    points: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(j: int, rem: list[int]):
        if nonneg and any(r < 0 for r in rem):
            return
        if any(r and i not in reach[j] for i, r in enumerate(rem)):
            return
        budget_c = sum(ci * r for ci, r in zip(c, rem))
        if budget_c < 0:
            return
        if j == n:
            if not any(rem):
                points.append(tuple(x))
            return
        top = budget_c // weight[j]
        col = cols[j]
        for t in range(top + 1):
            x[j] = t
            rec(j + 1, [r - t * a for r, a in zip(rem, col)])
        x[j] = 0

    rec(0, list(b))
    return Fiber(b, tuple(sorted(points)))


# ---------------------------------------------------------------------------
# Markov bases
# ---------------------------------------------------------------------------

def _components(points: Sequence[tuple[int, ...]], moves: Sequence[tuple[tuple[int, ...], tuple[int, ...]]]):
    index = {p: i for i, p in enumerate(points)}
    parent = list(range(len(points)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in points:
        for head, tail in moves:
            if all(a >= h for a, h in zip(p, head)):
                q = tuple(a - h + t for a, h, t in zip(p, head, tail))
                ri, rj = find(index[p]), find(index[q])
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[tuple[int, ...]]] = {}
    for p in points:
        groups.setdefault(find(index[p]), []).append(p)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def markov_by_fibers(A: VectorConfig, budget: Budget | None = None) -> MarkovBasis:
    """A minimal generating set, built degree by degree from fiber connectivity.

    Candidate degrees are the A-degrees of Graver elements, visited in increasing
    order of a positive grading. Within a fiber, points are joined by moves of
    already accepted generators; the components are ordered by their smallest
    point and the smallest point of the first component is joined to the smallest
    point of each other component.
    """
    c = _positive_functional(A)
    if c is None:
        raise NotPointedError("semigroup not pointed; use the nonpointed module")
    gr = graver(A, budget=budget)
    degrees = {A.degree(v.positive_part) for v in gr}
    order = sorted(degrees, key=lambda d: (sum(ci * di for ci, di in zip(c, d)), d))
    accepted: list[LatticeVector] = []
    indispensable = set()
    moves: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for d in order:
        if budget is not None:
            budget.check()
        fib = fiber(A, d)
        comps = _components(fib.points, moves)
        if len(comps) < 2:
            continue
        first = comps[0][0]
        new = []
        for comp in comps[1:]:
            v = LatticeVector(tuple(a - b for a, b in zip(first, comp[0]))).canonical()
            new.append(v)
        if len(fib.points) == 2:
            indispensable.update(new)
        accepted.extend(new)
        for v in new:
            moves.append((v.positive_part, v.negative_part))
            moves.append((v.negative_part, v.positive_part))
    return MarkovBasis(_sorted_vectors(accepted), frozenset(indispensable))


# ---------------------------------------------------------------------------
# Universal Groebner basis membership
# ---------------------------------------------------------------------------

def in_ugb(A: VectorConfig, u: LatticeVector) -> bool:
    """Decide whether ``[u+, u-]`` is an edge of the fiber polytope of ``deg u+``.

    The fiber scan doubles as a primitivity check: a primitive ``u`` has no other
    fiber point below ``|u|``, and in particular none on the open segment.
    """
    if not any(u.entries):
        raise ValueError("zero vector")
    up, um = u.positive_part, u.negative_part
    if A.degree(up) != A.degree(um):
        raise ValueError("vector not in the kernel")
    fib = fiber(A, A.degree(up))
    magnitude = [a + b for a, b in zip(up, um)]
    others = [x for x in fib.points if x != up and x != um]
    for x in others:
        if all(a <= m for a, m in zip(x, magnitude)):
            raise ValueError("vector is not primitive")
    if not others:
        return True
    direction = u.entries
    ge = [(tuple(a - b for a, b in zip(up, x)), 1) for x in others]
    return feasible_point(ge=ge, eq=[(direction, 0)], nvars=A.cols) is not None


def ugb(A: VectorConfig, degree_cap: int | None = None, budget: Budget | None = None) -> LatticeBasis:
    gr = graver(A, degree_cap=degree_cap, budget=budget)
    if len(_integer_kernel(A.matrix, A.cols)) <= 1:
        # a principal toric ideal is its own universal Groebner basis
        return gr
    return LatticeBasis(tuple(v for v in gr if in_ugb(A, v)), gr.truncated)


def is_primitive_vector(A: VectorConfig, u: LatticeVector) -> bool:
    """True iff no other nonzero kernel vector divides ``u`` sidewise."""
    up, um = u.positive_part, u.negative_part
    if A.degree(up) != A.degree(um):
        return False
    if any(a and b for a, b in zip(up, um)):
        return False
    magnitude = [a + b for a, b in zip(up, um)]
    fib = fiber(A, A.degree(up))
    return not any(x != up and x != um and all(a <= m for a, m in zip(x, magnitude)) for x in fib.points)


def restrict(A: VectorConfig, columns: Sequence[int]) -> VectorConfig:
    return VectorConfig(tuple(tuple(r[j] for j in columns) for r in A.matrix))

