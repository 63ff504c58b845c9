"""Graph-side description of the toric bases of a graph.

Every element of the Graver basis of ``I_G`` is the binomial of a primitive even
closed walk, and the circuits, the universal Groebner basis and the minimal
generators are singled out by the shape of the walk's subgraph, the parities of
its edges and the chords it has in ``G``. This module decides those properties
for individual walks and enumerates each basis from them.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .binomial import Binomial
from .budget import Budget
from .graph import (
    BLOCK_CUT_EDGE,
    BLOCK_CYCLE,
    CHORD_ODD,
    BlockDecomposition,
    EvenClosedWalk,
    Graph,
    GraphError,
    _cycles,
    blocks_of_edges,
    chords_of,
    cycle_edges,
    is_connected_edges,
)

# Above this many edges, Graver enumeration needs an explicit degree cap.
GRAVER_CAP_EDGES = 14


def binomial_of_walk(w: EvenClosedWalk) -> Binomial:
    """``E+(w) - E-(w)``: odd positions against even positions, uncancelled."""
    m = w.host.edge_count
    plus = [0] * m
    minus = [0] * m
    for i, e in enumerate(w.edges):
        if i % 2 == 0:
            plus[e] += 1
        else:
            minus[e] += 1
    return Binomial(tuple(plus), tuple(minus))


# ---------------------------------------------------------------------------
# Subgraph shapes
# ---------------------------------------------------------------------------

def _decompose(g: Graph, W: Iterable[int]) -> tuple[frozenset[int], BlockDecomposition]:
    W = frozenset(W)
    if not W or not is_connected_edges(g, W):
        raise GraphError("subgraph not connected")
    return W, blocks_of_edges(g, W)


def _blocks_per_vertex(dec: BlockDecomposition) -> dict[int, list[int]]:
    at: dict[int, list[int]] = defaultdict(list)
    for i, bv in enumerate(dec.block_vertices):
        for v in bv:
            at[v].append(i)
    return at


def is_circuit_subgraph(g: Graph, W: Iterable[int]) -> bool:
    """Even cycle, two odd cycles sharing one vertex, or two disjoint odd cycles plus a path."""
    W, dec = _decompose(g, W)
    if len(dec.blocks) == 1:
        return dec.kinds[0] == BLOCK_CYCLE and len(W) % 2 == 0
    if any(k not in (BLOCK_CYCLE, BLOCK_CUT_EDGE) for k in dec.kinds):
        return False
    cyclic = dec.cyclic_blocks()
    if len(cyclic) != 2 or any(len(dec.blocks[i]) % 2 == 0 for i in cyclic):
        return False
    at = _blocks_per_vertex(dec)
    if any(len(bs) > 2 for bs in at.values()):
        return False
    for i, bv in enumerate(dec.block_vertices):
        attachments = len(bv & dec.cut_vertices)
        if attachments != (1 if dec.kinds[i] == BLOCK_CYCLE else 2):
            return False
    return True


def is_primitive_subgraph(g: Graph, W: Iterable[int]) -> bool:
    """Whether ``W`` is the subgraph of some primitive walk.

    Either an even cycle, or a non-biconnected graph whose blocks are cycles and
    cut edges, each cut vertex lying in exactly two blocks and splitting ``W``
    into two parts that each carry an odd number of cycle edges.
    """
    W, dec = _decompose(g, W)
    if len(dec.blocks) == 1:
        return dec.kinds[0] == BLOCK_CYCLE and len(W) % 2 == 0
    if any(k not in (BLOCK_CYCLE, BLOCK_CUT_EDGE) for k in dec.kinds):
        return False
    at = _blocks_per_vertex(dec)
    for v in dec.cut_vertices:
        if len(at[v]) != 2:
            return False
    weight = [len(b) if k == BLOCK_CYCLE else 0 for b, k in zip(dec.blocks, dec.kinds)]
    for v in dec.cut_vertices:
        for start in at[v]:
            side = _side(dec, at, start, v)
            if sum(weight[i] for i in side) % 2 == 0:
                return False
    return True


def _side(dec: BlockDecomposition, at, start: int, removed: int) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        b = todo.pop()
        for x in dec.block_vertices[b] & dec.cut_vertices:
            if x == removed:
                continue
            for nb in at[x]:
                if nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
    return seen


def primitive_walk(g: Graph, W: Iterable[int], check: bool = True) -> EvenClosedWalk:
    """A closed walk whose subgraph is ``W``: cycles once around, cut edges out and back.

    Leaving each block through its cut vertices in the order met along the block
    makes every cut vertex a sink of both of its blocks, so the walk is primitive
    whenever ``W`` has the primitive shape.
    """
    W, dec = _decompose(g, W)
    if check and not is_primitive_subgraph(g, W):
        raise GraphError("subgraph is not the graph of a primitive walk")
    at = _blocks_per_vertex(dec)

    def detours(x: int, came_from: int) -> list[int]:
        out = []
        for b in at[x]:
            if b != came_from:
                out.extend(traverse(b, x))
        return out

    def traverse(b: int, entry: int) -> list[int]:
        edges = dec.blocks[b]
        if dec.kinds[b] == BLOCK_CUT_EDGE:
            (e,) = edges
            far = g.other(e, entry)
            return [e] + detours(far, b) + [e]
        seq = []
        cur, prev = entry, None
        for step in range(len(edges)):
            e = min(f for _, f in g.incident(cur) if f in edges and f != prev)
            seq.append(e)
            cur, prev = g.other(e, cur), e
            if step < len(edges) - 1:
                seq.extend(detours(cur, b))
        return seq

    root = 0  # block holding the smallest edge
    free = sorted(dec.block_vertices[root] - dec.cut_vertices)
    entry = free[0] if free else min(dec.block_vertices[root])
    seq = traverse(root, entry)
    if entry in dec.cut_vertices:
        seq.extend(detours(entry, root))
    return EvenClosedWalk(g, tuple(seq))


# ---------------------------------------------------------------------------
# Walk predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _WalkInfo:
    binomial: Binomial
    dec: BlockDecomposition
    sign: dict[int, int]  # +1 on w+, -1 on w-


@lru_cache(maxsize=8192)
def _info(w: EvenClosedWalk) -> _WalkInfo:
    b = binomial_of_walk(w)
    dec = blocks_of_edges(w.host, w.edge_set)
    sign = {}
    for e, (p, m) in enumerate(zip(b.plus, b.minus)):
        if p and not m:
            sign[e] = 1
        elif m and not p:
            sign[e] = -1
    return _WalkInfo(b, dec, sign)


def is_primitive_walk(g: Graph, w: EvenClosedWalk) -> bool:
    b = binomial_of_walk(w)
    if b.unreduced or not any(b.plus):
        return False
    W = w.edge_set
    if not is_primitive_subgraph(g, W):
        return False
    reference = binomial_of_walk(primitive_walk(g, W, check=False)).canonical()
    if b.canonical() == reference:
        return True
    # multiplicities differ from the shape's pattern; let the lattice decide
    from .lattice import LatticeVector, VectorConfig, is_primitive_vector, restrict

    cols = sorted(W)
    config = restrict(VectorConfig.from_graph(g), cols)
    return is_primitive_vector(config, LatticeVector(tuple(b.vector[c] for c in cols)))


def _require_primitive(w: EvenClosedWalk):
    if not is_primitive_walk(w.host, w):
        raise ValueError("requires primitive walk")


@dataclass(frozen=True)
class SinkSet:
    """Sinks of each cyclic block of a primitive walk, keyed by the block's edge set."""

    blocks: tuple[frozenset[int], ...]
    sinks: tuple[frozenset[int], ...]

    def all(self) -> frozenset[int]:
        return frozenset().union(*self.sinks) if self.sinks else frozenset()


def sinks(w: EvenClosedWalk) -> SinkSet:
    info = _info(w)
    if info.binomial.unreduced:
        raise ValueError("requires primitive walk")
    g = w.host
    blocks, found = [], []
    for i in info.dec.cyclic_blocks():
        edges = info.dec.blocks[i]
        here = set()
        for v in info.dec.block_vertices[i]:
            a, b = (e for _, e in g.incident(v) if e in edges)
            if info.sign[a] == info.sign[b]:
                here.add(v)
        if not here <= info.dec.cut_vertices:
            raise AssertionError(f"sink outside the cut vertices: {sorted(here - info.dec.cut_vertices)}")
        blocks.append(edges)
        found.append(frozenset(here))
    return SinkSet(tuple(blocks), tuple(found))


def _strongly_primitive(w: EvenClosedWalk) -> bool:
    g = w.host
    sk = sinks(w)
    for edges, here in zip(sk.blocks, sk.sinks):
        for e in edges:
            a, b = g.edges[e]
            if a in here and b in here:
                return False
    return True


def is_strongly_primitive(w: EvenClosedWalk) -> bool:
    """No cyclic block has two sinks joined by one of its edges."""
    _require_primitive(w)
    return _strongly_primitive(w)


def _mixed(w: EvenClosedWalk) -> bool:
    info = _info(w)
    for i in info.dec.cyclic_blocks():
        signs = {info.sign[e] for e in info.dec.blocks[i]}
        if len(signs) == 1:
            return False
    return True


def is_mixed(w: EvenClosedWalk) -> bool:
    """No cyclic block lies entirely in w+ or entirely in w-."""
    _require_primitive(w)
    return _mixed(w)


# Chord interplay. These three functions are the only place the readings of
# "cross effectively" and "F4" live.

def _chord_positions(w: EvenClosedWalk, f: int) -> tuple[int, int]:
    a, b = w.host.edges[f]
    i, j = w.position_of(a), w.position_of(b)
    return (i, j) if i < j else (j, i)


def crosses_effectively(w: EvenClosedWalk, f1: int, f2: int) -> bool:
    """Odd chords whose endpoints interleave along ``w`` at an odd offset."""
    i1, j1 = _chord_positions(w, f1)
    i2, j2 = _chord_positions(w, f2)
    if (i2 - i1) % 2 == 0:
        return False
    return i1 < i2 < j1 < j2 or i2 < i1 < j2 < j1


def forms_f4(w: EvenClosedWalk, f1: int, f2: int) -> bool:
    """Two effectively crossing odd chords closing a 4-cycle with two walk edges of equal parity."""
    if not crosses_effectively(w, f1, f2):
        return False
    n = len(w)
    p1, p2 = _chord_positions(w, f1), _chord_positions(w, f2)

    def walk_edge(x: int, y: int) -> int | None:
        if (y - x) % n == 1:
            return x
        if (x - y) % n == 1:
            return y
        return None

    for (a, b), (c, d) in (((p1[0], p2[0]), (p1[1], p2[1])), ((p1[0], p2[1]), (p1[1], p2[0]))):
        s, t = walk_edge(a, b), walk_edge(c, d)
        if s is not None and t is not None and s % 2 == t % 2:
            return True
    return False


def crosses_f4(w: EvenClosedWalk, f: int, f4: tuple[int, int]) -> bool:
    """An odd chord outside an F4 crossing one of its chords effectively."""
    if f in f4:
        return False
    return any(crosses_effectively(w, f, h) for h in f4)


def _chord_conditions(g: Graph, w: EvenClosedWalk) -> tuple[bool, list[int], list[tuple[int, int]]]:
    chords = chords_of(g, w)
    all_odd = all(kind == CHORD_ODD for _, kind in chords)
    odd = [e for e, kind in chords if kind == CHORD_ODD]
    crossing = [(a, b) for a, b in combinations(odd, 2) if crosses_effectively(w, a, b)]
    return all_odd, odd, crossing


def _minimal(g: Graph, w: EvenClosedWalk) -> bool:
    all_odd, odd, crossing = _chord_conditions(g, w)
    if not all_odd:
        return False
    f4s = [pair for pair in crossing if forms_f4(w, *pair)]
    if len(f4s) != len(crossing):
        return False
    for pair in f4s:
        if any(crosses_f4(w, f, pair) for f in odd):
            return False
    return _strongly_primitive(w)


def is_minimal_walk(g: Graph, w: EvenClosedWalk) -> bool:
    """Whether ``B_w`` belongs to some minimal generating set of ``I_G``.

    All chords odd; effectively crossing odd chords only inside an F4; no odd
    chord crossing an F4; and the walk strongly primitive.
    """
    _require_primitive(w)
    return _minimal(g, w)


def _indispensable(g: Graph, w: EvenClosedWalk) -> bool:
    all_odd, _, crossing = _chord_conditions(g, w)
    return all_odd and not crossing and _strongly_primitive(w)


def is_indispensable_walk(g: Graph, w: EvenClosedWalk) -> bool:
    _require_primitive(w)
    return _indispensable(g, w)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalkBasis:
    """Binomials of a basis together with a realizing primitive walk for each."""

    elements: tuple[Binomial, ...]
    walks: tuple[EvenClosedWalk, ...] = field(repr=False)
    truncated: bool = False
    indispensable: frozenset[Binomial] = frozenset()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item):
        return item in set(self.elements)

    @property
    def max_degree(self) -> int:
        return max((b.degree for b in self.elements), default=0)

    def walk_of(self, b: Binomial) -> EvenClosedWalk:
        return self.walks[self.elements.index(b)]

    def filtered(self, keep) -> "WalkBasis":
        pairs = [(b, w) for b, w in zip(self.elements, self.walks) if keep(w)]
        return WalkBasis(tuple(b for b, _ in pairs), tuple(w for _, w in pairs), self.truncated)


def _basis_from_supports(g: Graph, supports: Iterable[frozenset[int]], truncated: bool) -> WalkBasis:
    pairs = []
    for W in supports:
        w = primitive_walk(g, W, check=False)
        b = binomial_of_walk(w)
        if b.unreduced:
            raise AssertionError(f"support {sorted(W)} produced a reducible walk")
        pairs.append((b.canonical(), w))
    pairs.sort(key=lambda p: p[0].sort_key())
    return WalkBasis(tuple(b for b, _ in pairs), tuple(w for _, w in pairs), truncated)


def _simple_paths(g: Graph, start: int, blocked: set[int], stop: set[int] | None, max_edges: int | None):
    """Simple paths leaving ``start`` through unblocked vertices.

    With ``stop`` given, only paths ending on the first vertex of ``stop`` they
    meet are produced; otherwise every path (including the empty one) is.
    """
    path_v = [start]
    path_e: list[int] = []
    on = {start}

    def rec():
        v = path_v[-1]
        for w, e in g.incident(v):
            if w in on or w in blocked:
                continue
            if max_edges is not None and len(path_e) >= max_edges:
                return
            if stop is not None and w in stop:
                yield list(path_v) + [w], list(path_e) + [e]
                continue
            path_v.append(w)
            path_e.append(e)
            on.add(w)
            if stop is None:
                yield list(path_v), list(path_e)
            yield from rec()
            on.discard(path_v.pop())
            path_e.pop()

    if stop is None:
        yield [start], []
    yield from rec()


def enumerate_circuit_walks(g: Graph) -> WalkBasis:
    """Circuits: even cycles, and pairs of odd cycles meeting once or joined by a path."""
    cycles, _ = _cycles(g, None)
    even, odd = [], []
    for c in cycles:
        (even if len(c) % 2 == 0 else odd).append((frozenset(c), frozenset(cycle_edges(g, c))))
    supports = {edges for _, edges in even}
    for (va, ea), (vb, eb) in combinations(odd, 2):
        shared = va & vb
        if len(shared) == 1:
            supports.add(ea | eb)
        elif not shared:
            for a in sorted(va):
                for _, path_e in _simple_paths(g, a, blocked=set(va) - {a}, stop=set(vb), max_edges=None):
                    supports.add(ea | eb | frozenset(path_e))
    return _basis_from_supports(g, supports, False)


def _primitive_supports(g: Graph, degree_cap: int | None, budget: Budget | None):
    # Non-cycle supports are trees of cycles glued at single vertices or joined by
    # paths, every vertex in at most two blocks; they grow from an odd leaf cycle
    # by attaching "path + cycle" at a vertex that lies in one block so far.
    weight_cap = None if degree_cap is None else 2 * degree_cap
    max_len = g.vertex_count if weight_cap is None else min(g.vertex_count, weight_cap)
    cycles, truncated = _cycles(g, max_len)
    info = [(frozenset(c), frozenset(cycle_edges(g, c)), len(c)) for c in cycles]
    through: dict[int, list[int]] = defaultdict(list)
    for idx, (verts, _, _) in enumerate(info):
        for v in verts:
            through[v].append(idx)

    found = {edges for _, edges, n in info if n % 2 == 0}
    seen: set[frozenset[int]] = set()
    stack = []
    for idx, (verts, edges, n) in enumerate(info):
        if n % 2 and edges not in seen:
            seen.add(edges)
            stack.append((edges, {v: 1 for v in verts}, (idx,), n))
    steps = 0
    while stack:
        edges, count, used_cycles, weight = stack.pop()
        steps += 1
        if budget is not None and steps % 512 == 0:
            budget.check()
        if len(used_cycles) >= 2 and all(
            (info[c][2] - sum(1 for v in info[c][0] if count[v] == 2)) % 2 == 0 for c in used_cycles
        ):
            found.add(edges)
        occupied = set(count)
        for v in sorted(u for u, k in count.items() if k == 1):
            room = None if weight_cap is None else (weight_cap - weight) // 2
            for path_v, path_e in _simple_paths(g, v, blocked=occupied, stop=None, max_edges=room):
                y = path_v[-1]
                taken = occupied | set(path_v)
                for c in through[y]:
                    verts, cedges, n = info[c]
                    if verts & taken != {y}:
                        continue
                    new_weight = weight + 2 * len(path_e) + n
                    if weight_cap is not None and new_weight > weight_cap:
                        truncated = True
                        continue
                    key = edges | frozenset(path_e) | cedges
                    if key in seen:
                        continue
                    seen.add(key)
                    new_count = dict(count)
                    for u in path_v:
                        new_count[u] = 2
                    for u in verts:
                        if u != y:
                            new_count[u] = 1
                    stack.append((key, new_count, used_cycles + (c,), new_weight))
    return found, truncated


def enumerate_graver_walks(g: Graph, degree_cap: int | None = None, budget: Budget | None = None) -> WalkBasis:
    if degree_cap is None and g.edge_count > GRAVER_CAP_EDGES:
        raise ValueError(f"graph has {g.edge_count} edges; a degree cap is required above {GRAVER_CAP_EDGES}")
    supports, truncated = _primitive_supports(g, degree_cap, budget)
    return _basis_from_supports(g, supports, truncated)


def enumerate_ugb_walks(g: Graph, degree_cap: int | None = None, budget: Budget | None = None) -> WalkBasis:
    return enumerate_graver_walks(g, degree_cap, budget).filtered(_mixed)


def vertex_degree(g: Graph, exponents: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * g.vertex_count
    for e, k in enumerate(exponents):
        if k:
            u, v = g.edges[e]
            out[u] += k
            out[v] += k
    return tuple(out)


def enumerate_markov_walks(g: Graph, degree_cap: int | None = None, budget: Budget | None = None) -> WalkBasis:
    """A Markov basis drawn from the minimal binomials.

    Two monomials of one degree lie in the same connected component of their
    fiber exactly when the binomial joining them is not minimal, so the minimal
    binomials of a degree determine its components. The components are ordered
    by their smallest monomial, and the smallest monomial overall is joined to
    the smallest monomial of every other component.
    """
    gr = enumerate_graver_walks(g, degree_cap, budget)
    minimal = [(b, w) for b, w in zip(gr.elements, gr.walks) if _minimal(g, w)]
    groups: dict[tuple[int, ...], list[tuple[Binomial, EvenClosedWalk]]] = defaultdict(list)
    for b, w in minimal:
        groups[vertex_degree(g, b.plus)].append((b, w))
    chosen = []
    for _, members in sorted(groups.items()):
        walk_for = {frozenset((b.plus, b.minus)): (b, w) for b, w in members}
        monomials = sorted({m for b, _ in members for m in (b.plus, b.minus)})
        parent = {m: m for m in monomials}

        def find(m):
            while parent[m] != m:
                parent[m] = parent[parent[m]]
                m = parent[m]
            return m

        for p, q in combinations(monomials, 2):
            if frozenset((p, q)) not in walk_for:
                rp, rq = find(p), find(q)
                if rp != rq:
                    parent[max(rp, rq)] = min(rp, rq)
        comps: dict[tuple[int, ...], list[tuple[int, ...]]] = defaultdict(list)
        for m in monomials:
            comps[find(m)].append(m)
        ordered = sorted((sorted(c) for c in comps.values()), key=lambda c: c[0])
        first = ordered[0][0]
        for comp in ordered[1:]:
            key = frozenset((first, comp[0]))
            if key not in walk_for:
                raise AssertionError("minimal binomials of one degree do not split into components")
            chosen.append(walk_for[key])
    chosen.sort(key=lambda p: p[0].sort_key())
    indispensable = frozenset(b for b, w in chosen if _indispensable(g, w))
    return WalkBasis(tuple(b for b, _ in chosen), tuple(w for _, w in chosen), gr.truncated, indispensable)
