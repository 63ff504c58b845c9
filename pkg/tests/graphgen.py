"""Connected simple graphs up to isomorphism, grown one edge at a time (networkx for isomorphism)."""

from __future__ import annotations

import random

import networkx as nx

from toricbases.graph import Graph


def connected_graphs(max_edges: int) -> dict[int, list[nx.Graph]]:
    """All connected simple graphs with 1..max_edges edges, one per isomorphism class."""
    levels = {1: [nx.Graph([(0, 1)])]}
    for m in range(2, max_edges + 1):
        buckets: dict[str, list[nx.Graph]] = {}
        for h in levels[m - 1]:
            n = h.number_of_nodes()
            candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if not h.has_edge(u, v)]
            candidates += [(u, n) for u in range(n)]
            for u, v in candidates:
                k = h.copy()
                k.add_edge(u, v)
                key = nx.weisfeiler_lehman_graph_hash(k, iterations=3)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(k, other) for other in bucket):
                    bucket.append(k)
        levels[m] = [g for key in sorted(buckets) for g in buckets[key]]
    return levels


def to_graph(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in h.edges), len(nodes))


def random_connected(seed: int, edges: int) -> Graph:
    """A connected graph with the given edge count: random spanning tree plus random extra edges."""
    rng = random.Random(seed)
    while True:
        n = rng.randint(max(4, 1 + int((1 + (1 + 8 * edges) ** 0.5) / 2)), edges + 1)
        if n * (n - 1) // 2 < edges:
            continue
        tree = [(rng.randrange(i), i) for i in range(1, n)]
        present = {tuple(sorted(e)) for e in tree}
        pool = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
        rng.shuffle(pool)
        chosen = sorted(present | set(pool[: edges - len(present)]))
        if len(chosen) == edges:
            return Graph.from_edges(chosen, n)
