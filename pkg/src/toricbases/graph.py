"""Finite simple graphs and the structural machinery the walk classifiers rely on.

Edges are addressed by their position in ``Graph.edges``; that index is also the
variable index of the edge in every binomial built from the graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

# Above this many edges, cycle enumeration refuses to run without an explicit length cap.
CYCLE_CAP_EDGES = 24

BLOCK_CYCLE = "cycle"
BLOCK_CUT_EDGE = "cut-edge"
BLOCK_OTHER = "other"


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: Mapping[int, str] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        normalized = []
        index = {}
        for i, (u, v) in enumerate(self.edges):
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"edge {i} is a loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge {i} = ({u}, {v}) out of range")
            key = (min(u, v), max(u, v))
            if key in index:
                raise GraphError(f"parallel edge {key} at positions {index[key]} and {i}")
            index[key] = i
            normalized.append(key)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(normalized):
            adj[u].append((v, i))
            adj[v].append((u, i))
        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertex_count: int | None = None,
                   labels: Mapping[int, str] | None = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if vertex_count is None:
            vertex_count = 1 + max((max(e) for e in edges), default=-1)
        return cls(vertex_count, tuple(edges), labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """``(neighbor, edge_index)`` pairs at ``v`` in increasing edge index."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edge_index(self, u: int, v: int) -> int | None:
        return self._index.get((min(u, v), max(u, v)))

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def vertices_of(self, edge_ids: Iterable[int]) -> set[int]:
        out = set()
        for e in edge_ids:
            out.update(self.edges[e])
        return out

    def label(self, v: int) -> str:
        if self.labels and v in self.labels:
            return self.labels[v]
        return str(v)

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        return len(_reach(self, 0, range(self.edge_count))) == self.vertex_count

    def to_edge_list(self) -> str:
        lines = [f"{self.vertex_count} {self.edge_count}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "Graph":
        """Parse the ``n m`` / ``u v`` edge-list format; ``#`` lines are comments."""
        rows = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            rows.append(line.split())
        if not rows:
            raise GraphError("empty edge list")
        try:
            n, m = (int(x) for x in rows[0])
            edges = [(int(a), int(b)) for a, b in rows[1:]]
        except ValueError as exc:
            raise GraphError(f"malformed edge list: {exc}") from None
        if len(edges) != m:
            raise GraphError(f"header announces {m} edges, found {len(edges)}")
        return cls(n, tuple(edges))


def _reach(g: Graph, start: int, edge_ids: Iterable[int]) -> set[int]:
    allowed = set(edge_ids)
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w, e in g.incident(v):
            if e in allowed and w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def is_connected_edges(g: Graph, edge_ids: Iterable[int]) -> bool:
    edge_ids = list(edge_ids)
    if not edge_ids:
        return False
    verts = g.vertices_of(edge_ids)
    return _reach(g, g.edges[edge_ids[0]][0], edge_ids) == verts


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    kinds: tuple[str, ...]
    block_vertices: tuple[frozenset[int], ...]

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, bv in enumerate(self.block_vertices) if v in bv]

    def cyclic_blocks(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k == BLOCK_CYCLE]


def _biconnected(g: Graph, edge_ids: Iterable[int]) -> list[list[int]]:
    # iterative Hopcroft-Tarjan over the subgraph spanned by edge_ids
    allowed = set(edge_ids)
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in sorted(allowed):
        u, v = g.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    comps: list[list[int]] = []
    clock = 0
    for root in sorted(adj):
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        estack: list[int] = []
        while stack:
            v, parent_edge, it = stack[-1]
            descended = False
            for w, e in it:
                if e == parent_edge:
                    continue
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    estack.append(e)
                    stack.append((w, e, iter(adj[w])))
                    descended = True
                    break
                if disc[w] < disc[v]:
                    estack.append(e)
                    low[v] = min(low[v], disc[w])
            if descended:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    while True:
                        e2 = estack.pop()
                        comp.append(e2)
                        if e2 == parent_edge:
                            break
                    comps.append(comp)
    return comps


def blocks_of_edges(g: Graph, edge_ids: Iterable[int]) -> BlockDecomposition:
    """Block decomposition of the subgraph of ``g`` spanned by ``edge_ids``."""
    comps = sorted((frozenset(c) for c in _biconnected(g, edge_ids)), key=min)
    block_vertices = tuple(frozenset(g.vertices_of(c)) for c in comps)
    kinds = []
    for c, bv in zip(comps, block_vertices):
        if len(c) == 1:
            kinds.append(BLOCK_CUT_EDGE)
        elif len(c) == len(bv):
            kinds.append(BLOCK_CYCLE)
        else:
            kinds.append(BLOCK_OTHER)
    seen: dict[int, int] = {}
    for bv in block_vertices:
        for v in bv:
            seen[v] = seen.get(v, 0) + 1
    cuts = frozenset(v for v, k in seen.items() if k >= 2)
    return BlockDecomposition(tuple(comps), cuts, tuple(kinds), block_vertices)


def block_decomposition(g: Graph) -> BlockDecomposition:
    if g.edge_count == 0 and g.vertex_count <= 1:
        return BlockDecomposition((), frozenset(), (), ())
    if not g.is_connected():
        raise GraphError("graph not connected")
    return blocks_of_edges(g, range(g.edge_count))


@dataclass(frozen=True)
class BlockTree:
    """Bipartite block/cut-vertex tree. Nodes are ``("block", i)`` or ``("cut", v)``."""

    nodes: tuple[tuple[str, int], ...]
    adjacency: tuple[tuple[tuple[str, int], tuple[str, int]], ...]
    decomposition: BlockDecomposition

    def neighbors(self, node):
        out = []
        for a, b in self.adjacency:
            if a == node:
                out.append(b)
            elif b == node:
                out.append(a)
        return out

    def path(self, start, end) -> list[tuple[str, int]]:
        if start not in self.nodes or end not in self.nodes:
            raise GraphError(f"node not in block tree: {start if start not in self.nodes else end}")
        prev = {start: None}
        todo = deque([start])
        while todo:
            x = todo.popleft()
            if x == end:
                break
            for y in self.neighbors(x):
                if y not in prev:
                    prev[y] = x
                    todo.append(y)
        out = [end]
        while out[-1] != start:
            out.append(prev[out[-1]])
        return out[::-1]


def block_tree(g: Graph) -> BlockTree:
    dec = block_decomposition(g)
    return _tree_from(dec)


def _tree_from(dec: BlockDecomposition) -> BlockTree:
    nodes = [("block", i) for i in range(len(dec.blocks))]
    nodes += [("cut", v) for v in sorted(dec.cut_vertices)]
    adjacency = []
    for i, bv in enumerate(dec.block_vertices):
        for v in sorted(bv & dec.cut_vertices):
            adjacency.append((("block", i), ("cut", v)))
    tree = BlockTree(tuple(nodes), tuple(adjacency), dec)
    if nodes and len(nodes) != len(adjacency) + 1:
        raise AssertionError("block tree is not a tree")
    return tree


def internal_block_distance(t: BlockTree, b1: int, b2: int) -> int:
    """Number of blocks strictly between blocks ``b1`` and ``b2`` on the tree path."""
    if b1 == b2:
        raise GraphError("blocks must differ")
    path = t.path(("block", b1), ("block", b2))
    return sum(1 for kind, _ in path[1:-1] if kind == "block")


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------

def _cycles(g: Graph, max_length: int | None) -> tuple[list[tuple[int, ...]], bool]:
    """All simple cycles in canonical form, plus whether the length cap cut anything."""
    limit = g.vertex_count if max_length is None else max_length
    found: list[tuple[int, ...]] = []
    hit_limit = False
    adj = [sorted(w for w, _ in g.incident(v)) for v in range(g.vertex_count)]
    for s in range(g.vertex_count):
        path = [s]
        on_path = {s}
        # explicit stack of neighbor iterators
        iters = [iter(adj[s])]
        while iters:
            advanced = False
            for w in iters[-1]:
                if w == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        found.append(tuple(path))
                    continue
                if w < s or w in on_path:
                    continue
                if len(path) >= limit:
                    hit_limit = True
                    continue
                path.append(w)
                on_path.add(w)
                iters.append(iter(adj[w]))
                advanced = True
                break
            if not advanced:
                iters.pop()
                on_path.discard(path.pop())
    found.sort(key=lambda c: (len(c), c))
    return found, hit_limit


def enumerate_cycles(g: Graph, max_length: int | None = None) -> list[tuple[int, ...]]:
    """Every simple cycle once, as a vertex tuple starting at its smallest vertex and
    heading to the smaller of that vertex's two cycle neighbors."""
    if max_length is None and g.edge_count > CYCLE_CAP_EDGES:
        raise GraphError(
            f"graph has {g.edge_count} edges; pass max_length explicitly above {CYCLE_CAP_EDGES}")
    return _cycles(g, max_length)[0]


def cycle_edges(g: Graph, cycle: Sequence[int]) -> tuple[int, ...]:
    out = []
    for i, v in enumerate(cycle):
        e = g.edge_index(v, cycle[(i + 1) % len(cycle)])
        if e is None:
            raise GraphError(f"{cycle} is not a cycle of the graph")
        out.append(e)
    return tuple(out)


def is_bipartite(g: Graph) -> tuple[bool, dict[int, int] | None]:
    color: dict[int, int] = {}
    for s in range(g.vertex_count):
        if s in color:
            continue
        color[s] = 0
        todo = deque([s])
        while todo:
            v = todo.popleft()
            for w, _ in g.incident(v):
                if w not in color:
                    color[w] = 1 - color[v]
                    todo.append(w)
                elif color[w] == color[v]:
                    return False, None
    return True, color


# ---------------------------------------------------------------------------
# Closed walks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvenClosedWalk:
    """Closed walk given by its edge sequence.

    ``vertices[i]`` and ``vertices[i + 1]`` (cyclically) are the endpoints of
    ``edges[i]``. Edges at even 0-based positions form ``w_plus``.
    """

    host: Graph = field(repr=False)
    edges: tuple[int, ...]
    vertices: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        edges = tuple(int(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) % 2:
            raise GraphError("walk not even")
        if not edges:
            raise GraphError("empty walk")
        object.__setattr__(self, "vertices", self._itinerary())

    def _itinerary(self) -> tuple[int, ...]:
        g = self.host
        for start in g.edges[self.edges[0]]:
            cur = start
            seq = []
            for e in self.edges:
                if cur not in g.edges[e]:
                    break
                seq.append(cur)
                cur = g.other(e, cur)
            else:
                if cur == start:
                    return tuple(seq)
        raise GraphError("edge sequence is not a closed walk")

    @classmethod
    def from_vertices(cls, g: Graph, vertices: Sequence[int]) -> "EvenClosedWalk":
        edges = []
        for i, v in enumerate(vertices):
            e = g.edge_index(v, vertices[(i + 1) % len(vertices)])
            if e is None:
                raise GraphError(f"no edge between {v} and {vertices[(i + 1) % len(vertices)]}")
            edges.append(e)
        return cls(g, tuple(edges))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def w_plus(self) -> tuple[int, ...]:
        return self.edges[0::2]

    @property
    def w_minus(self) -> tuple[int, ...]:
        return self.edges[1::2]

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def position_of(self, v: int) -> int:
        return self.vertices.index(v)


def euler_trail(g: Graph) -> EvenClosedWalk:
    """Closed Eulerian trail, always leaving a vertex by its smallest unused edge."""
    if g.edge_count == 0:
        raise GraphError("graph has no edges")
    for v in range(g.vertex_count):
        if g.degree(v) % 2:
            raise GraphError(f"not Eulerian: vertex {v} has odd degree")
    if g.edge_count % 2:
        raise GraphError("walk not even")
    touched = g.vertices_of(range(g.edge_count))
    if _reach(g, g.edges[0][0], range(g.edge_count)) != touched:
        raise GraphError("graph not connected")
    used = [False] * g.edge_count
    pointer = [0] * g.vertex_count
    stack: list[tuple[int, int | None]] = [(g.edges[0][0], None)]
    trail: list[int] = []
    while stack:
        v, via = stack[-1]
        inc = g.incident(v)
        while pointer[v] < len(inc) and used[inc[pointer[v]][1]]:
            pointer[v] += 1
        if pointer[v] < len(inc):
            w, e = inc[pointer[v]]
            used[e] = True
            stack.append((w, e))
        else:
            stack.pop()
            if via is not None:
                trail.append(via)
    trail.reverse()
    return EvenClosedWalk(g, tuple(trail))


CHORD_BRIDGE = "bridge"
CHORD_ODD = "odd"
CHORD_EVEN = "even"


def chords_of(g: Graph, w: EvenClosedWalk) -> list[tuple[int, str]]:
    """Chords of the walk's subgraph, each tagged bridge / odd / even."""
    dec = blocks_of_edges(g, w.edge_set)
    on_walk = set(w.vertices)
    blocks_at: dict[int, set[int]] = {}
    for i, bv in enumerate(dec.block_vertices):
        for v in bv:
            blocks_at.setdefault(v, set()).add(i)
    out = []
    walk_edges = w.edge_set
    for e, (a, b) in enumerate(g.edges):
        if e in walk_edges or a not in on_walk or b not in on_walk:
            continue
        ba, bb = blocks_at[a], blocks_at[b]
        if len(ba) > 1 or len(bb) > 1 or ba != bb:
            out.append((e, CHORD_BRIDGE))
            continue
        gap = abs(w.position_of(a) - w.position_of(b))
        out.append((e, CHORD_ODD if gap % 2 == 0 else CHORD_EVEN))
    return out
