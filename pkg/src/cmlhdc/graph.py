"""Random connected graphs and the directed-action table.

Every undirected edge contributes two directed actions (one per
orientation). Edges are kept sorted lexicographically; action 2i runs
low->high along edge i and action 2i+1 runs high->low, so action indices
are deterministic for a given edge set.
"""

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = ["Graph", "random_connected_graph"]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple  # sorted tuple of (u, v) pairs with u < v
    actions: tuple = field(init=False, repr=False, compare=False)
    _adjacency: tuple = field(init=False, repr=False, compare=False)
    _actions_from: tuple = field(init=False, repr=False, compare=False)
    _action_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate edges")
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
        object.__setattr__(self, "edges", edges)

        actions = []
        for u, v in edges:
            actions.append((u, v))
            actions.append((v, u))
        object.__setattr__(self, "actions", tuple(actions))

        adjacency = [[] for _ in range(self.n)]
        actions_from = [[] for _ in range(self.n)]
        for idx, (src, dst) in enumerate(actions):
            adjacency[src].append(dst)
            actions_from[src].append(idx)
        object.__setattr__(self, "_adjacency", tuple(tuple(a) for a in adjacency))
        object.__setattr__(self, "_actions_from", tuple(tuple(a) for a in actions_from))
        object.__setattr__(
            self, "_action_index", {sd: i for i, sd in enumerate(actions)}
        )

    @property
    def num_actions(self):
        return len(self.actions)

    def _check_node(self, u):
        if not (0 <= u < self.n):
            raise IndexError(f"node {u} out of range for n={self.n}")

    def neighbors(self, u):
        self._check_node(u)
        return self._adjacency[u]

    def permissible_actions(self, u):
        """Indices of all directed actions whose source is u."""
        self._check_node(u)
        return self._actions_from[u]

    def action_index(self, src, dst):
        return self._action_index[(src, dst)]

    def action_reverse(self, a):
        src, dst = self.actions[a]
        return self._action_index[(dst, src)]

    def shortest_path_length(self, u, v):
        """Minimum edge count between u and v by breadth-first search."""
        self._check_node(u)
        self._check_node(v)
        if u == v:
            return 0
        dist = np.full(self.n, -1, dtype=np.int64)
        dist[u] = 0
        frontier = [u]
        while frontier:
            nxt = []
            for node in frontier:
                for nb in self._adjacency[node]:
                    if dist[nb] < 0:
                        dist[nb] = dist[node] + 1
                        if nb == v:
                            return int(dist[nb])
                        nxt.append(nb)
            frontier = nxt
        raise ValueError(f"no path between {u} and {v}")

    def is_connected(self):
        try:
            for v in range(1, self.n):
                self.shortest_path_length(0, v)
        except ValueError:
            return False
        return True

    def to_json(self):
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges]})

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        return cls(n=obj["n"], edges=tuple(tuple(e) for e in obj["edges"]))


def _random_tree_edges(n, rng):
    """Uniform random labeled tree on n nodes via a random Pruefer sequence."""
    if n == 2:
        return [(0, 1)]
    prufer = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, dtype=np.int64)
    for x in prufer:
        degree[x] += 1
    edges = []
    import heapq

    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, int(x)), max(leaf, int(x))))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, int(x))
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return edges


def random_connected_graph(n, num_edges, rng):
    """Random connected graph: uniform spanning tree plus random extra edges."""
    if n < 2:
        raise ValueError(f"need n >= 2 nodes, got {n}")
    max_edges = n * (n - 1) // 2
    if not (n - 1 <= num_edges <= max_edges):
        raise ValueError(
            f"num_edges={num_edges} infeasible for n={n} "
            f"(must be in [{n - 1}, {max_edges}])"
        )
    edges = set(_random_tree_edges(n, rng))
    while len(edges) < num_edges:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v:
            continue
        edges.add((min(u, v), max(u, v)))
    return Graph(n=n, edges=tuple(sorted(edges)))
