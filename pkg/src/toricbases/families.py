"""Deterministic generators for the example graph families and their closed-form statistics."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .graph import Graph, GraphError

KINDS = ("ladder", "triangle_tree", "subdivision", "complete", "nonpointed_line")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int | None = None
    r: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.kind == "ladder":
            _need(self.n is not None and self.n >= 1, "ladder needs n >= 1")
        elif self.kind == "triangle_tree":
            _need(self.n is not None and self.n >= 3, "triangle_tree needs n >= 3")
            _need(self.n % 2 == 1, "n must be odd")
            _need(self.r is not None and self.r >= 0, "triangle_tree needs r >= 0")
        elif self.kind == "subdivision":
            _need(self.k is not None and self.k >= 2, "subdivision needs k >= 2")
        elif self.kind == "complete":
            _need(self.n is not None and self.n >= 3, "complete needs n >= 3")


def _need(ok: bool, message: str):
    if not ok:
        raise ValueError(message)


def ladder_graph(n: int) -> Graph:
    """Bipartite ladder of hexagons and quadrilaterals with 6n+2 vertices and 8n+2 edges."""
    if n < 1:
        raise ValueError("ladder needs n >= 1")
    names: list[str] = []
    index: dict[str, int] = {}

    def vertex(name: str) -> int:
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    for i in range(1, n + 2):
        vertex(f"v{i}")
    for i in range(1, n + 2):
        vertex(f"u{i}")
    edges = []
    for i in range(1, n + 1):
        s, t, x, y = (vertex(f"{c}{i}") for c in "stxy")
        v, v1, u, u1 = index[f"v{i}"], index[f"v{i + 1}"], index[f"u{i}"], index[f"u{i + 1}"]
        edges += [(v, s), (s, t), (t, v1), (v, v1), (u, x), (x, y), (y, u1), (u, u1)]
    edges += [(index["v1"], index["u1"]), (index[f"v{n + 1}"], index[f"u{n + 1}"])]
    return Graph.from_edges(edges, len(names), dict(enumerate(names)))


def triangle_tree(n: int, r: int) -> Graph:
    """The graph obtained from an n-cycle by r rounds of gluing an n-cycle at every degree-2 vertex."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    if n < 3 or r < 0:
        raise ValueError("triangle_tree needs odd n >= 3 and r >= 0")
    count = n
    edges = [(i, (i + 1) % n) for i in range(n)]
    for _ in range(r):
        degree = [0] * count
        for a, b in edges:
            degree[a] += 1
            degree[b] += 1
        for host in [v for v in range(count) if degree[v] == 2]:
            ring = [host] + list(range(count, count + n - 1))
            count += n - 1
            edges += [(ring[i], ring[(i + 1) % n]) for i in range(n)]
    return Graph.from_edges(edges, count)


def subdivide(g: Graph, k: int) -> Graph:
    """Replace every edge by a path of k edges; new vertices follow the original ones."""
    if k < 2:
        raise ValueError("subdivision needs k >= 2")
    count = g.vertex_count
    edges = []
    labels = {v: g.label(v) for v in range(g.vertex_count)}
    for e, (a, b) in enumerate(g.edges):
        path = [a] + list(range(count, count + k - 1)) + [b]
        for j, v in enumerate(path[1:-1], start=1):
            labels[v] = f"x{e + 1}_{j}"
        count += k - 1
        edges += list(zip(path, path[1:]))
    return Graph.from_edges(edges, count, labels)


def complete_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("complete needs n >= 3")
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)], n)


def _tree_edges(n: int, r: int) -> int:
    # n + n^2 ((n-1)^r - 1)/(n-2); the quotient is exact since (n-1)^r = 1 mod (n-2)
    num = n * n * ((n - 1) ** r - 1)
    if num % (n - 2):
        raise AssertionError("edge count formula is not integral")
    return n + num // (n - 2)


def expected_euler_degree(n: int, r: int, k: int = 1) -> int:
    """Degree of the binomial of a closed Eulerian trail of the k-subdivided triangle tree."""
    if n % 2 == 0 or n < 3 or r < 0 or k < 1:
        raise ValueError("need odd n >= 3, r >= 0, k >= 1")
    total = k * _tree_edges(n, r)
    if total % 2:
        raise AssertionError("Euler degree is not integral")
    return total // 2


def expected_max_circuit_degree(n: int, r: int, k: int = 1) -> int:
    """Largest circuit degree: two leaf n-cycles joined through 2r-1 cycles on the far route."""
    if n % 2 == 0 or n < 3 or r < 1 or k < 1:
        raise ValueError("need odd n >= 3, r >= 1, k >= 1")
    return k * n + (2 * r - 1) * k * (n - 1)


def expected_ladder_sizes(n: int) -> tuple[int, int]:
    """(Markov size, size shared by circuits, universal Groebner and Graver bases)."""
    if n < 1:
        raise ValueError("ladder needs n >= 1")
    return 2 * n + 1, 2 * n + 4 ** n


def expected_kn_degrees(n: int) -> tuple[int, int]:
    """(largest Graver degree, largest Markov degree) for the complete graph on n vertices."""
    if n < 4:
        raise ValueError("complete graph degrees need n >= 4")
    return n - 2, 2


def expected_subdivided_trail_degree(edge_count: int, k: int) -> int:
    """Degree of the binomial of a closed Eulerian trail after k-subdividing an Eulerian graph."""
    total = k * edge_count
    if total % 2:
        raise ValueError("closed even trail needs an even edge count")
    return total // 2


def expected_line_markov(q) -> tuple[int, int]:
    """(size, largest degree) of the Markov basis of (1, -1) built from pairwise coprime q."""
    q = tuple(q)
    return len(q), 2 * prod(q) // min(q)


def build(spec: FamilySpec, base: Graph | None = None) -> Graph:
    """Instantiate a graph family; ``subdivision`` needs the graph it subdivides."""
    if spec.kind == "ladder":
        return ladder_graph(spec.n)
    if spec.kind == "triangle_tree":
        g = triangle_tree(spec.n, spec.r)
        return subdivide(g, spec.k) if spec.k and spec.k >= 2 else g
    if spec.kind == "subdivision":
        if base is None:
            raise GraphError("subdivision needs a base graph")
        return subdivide(base, spec.k)
    if spec.kind == "complete":
        return complete_graph(spec.n)
    raise ValueError("nonpointed_line is a vector configuration, not a graph")
