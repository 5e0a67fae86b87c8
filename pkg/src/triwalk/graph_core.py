"""Graphs, symmetric arcs, and canonical indexing.

All downstream matrices are indexed by the canonical arc order:
lexicographic by (origin, terminus). Keeping that order fixed here makes
every operator and every report bit-reproducible across runs.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    EdgeListSyntaxError,
    InvalidVertexError,
    LoopEdgeError,
)

__all__ = [
    "Graph",
    "Arc",
    "ArcSet",
    "parse_edge_list",
    "format_edge_list",
    "graph_to_json",
    "gen_complete",
    "gen_cycle",
    "gen_double_cone",
    "arcs",
    "adjacency_and_degree",
]


@dataclass(frozen=True)
class Graph:
    """A finite simple connected graph on vertices 0..n-1.

    Edges are stored as sorted (u, v) pairs in sorted order; labels are
    cosmetic and never affect any computation.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        normalized = []
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise InvalidVertexError(f"edge ({u}, {v}) references a vertex outside [0, {self.n_vertices})")
            if u == v:
                raise LoopEdgeError(f"loop edge at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {key}")
            seen.add(key)
            normalized.append(key)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        if self.labels is not None and len(self.labels) != self.n_vertices:
            raise ValueError("labels must have one entry per vertex")
        self._check_connected()

    def _check_connected(self) -> None:
        if self.n_vertices == 1:
            return
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * self.n_vertices
        seen[0] = True
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        if not all(seen):
            missing = seen.index(False)
            raise DisconnectedGraphError(f"graph is disconnected (vertex {missing} unreachable from 0)")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        flat = np.fromiter((x for e in self.edges for x in e), dtype=np.int64, count=2 * self.n_edges)
        return np.bincount(flat, minlength=self.n_vertices)

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._edge_set

    @property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def neighbors(self, x: int) -> list[int]:
        if not 0 <= x < self.n_vertices:
            raise InvalidVertexError(f"vertex {x} outside [0, {self.n_vertices})")
        out = [v for u, v in self.edges if u == x] + [u for u, v in self.edges if v == x]
        return sorted(out)


@dataclass(frozen=True, order=True)
class Arc:
    """A directed arc (origin, terminus) over an existing edge."""

    origin: int
    terminus: int

    def __post_init__(self) -> None:
        if self.origin == self.terminus:
            raise LoopEdgeError(f"arc ({self.origin}, {self.terminus}) is a loop")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.origin, self.terminus)

    def reversed(self) -> "Arc":
        return Arc(self.terminus, self.origin)


@dataclass(frozen=True, eq=False)
class ArcSet:
    """All 2|E| symmetric arcs of a graph in canonical order.

    ``reverse`` is the fixed-point-free involution a -> a-bar as an index
    array; ``in_arcs[x]`` lists the indices of arcs terminating at x.
    """

    graph: Graph
    arcs: tuple[Arc, ...]
    index: dict[tuple[int, int], int] = field(repr=False)
    reverse: np.ndarray = field(repr=False)
    in_arcs: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @property
    def n_vertices(self) -> int:
        return self.graph.n_vertices

    def index_of(self, origin: int, terminus: int) -> int:
        try:
            return self.index[(origin, terminus)]
        except KeyError:
            raise InvalidVertexError(f"({origin}, {terminus}) is not an arc of this graph") from None

    def terminus(self, i: int) -> int:
        return self.arcs[i].terminus

    def origin(self, i: int) -> int:
        return self.arcs[i].origin


def parse_edge_list(text: str) -> Graph:
    """Parse a whitespace-separated edge list, one ``u v`` pair per line.

    ``#`` starts a comment; blank lines are ignored. The resulting graph
    must be simple and connected; each violation raises its own error
    class (see errors module).
    """
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListSyntaxError(f"line {lineno}: expected two vertex indices, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListSyntaxError(f"line {lineno}: non-integer token in {line!r}") from None
        if u < 0 or v < 0:
            raise EdgeListSyntaxError(f"line {lineno}: negative vertex index in {line!r}")
        if u == v:
            raise LoopEdgeError(f"line {lineno}: loop edge {u} {v}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    if not edges:
        raise DisconnectedGraphError("edge list is empty")
    n = max(max(e) for e in edges) + 1
    return Graph(n, tuple(edges))


def format_edge_list(g: Graph) -> str:
    """Canonical edge-list text for a graph (inverse of parse_edge_list)."""
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n_vertices, "edges": [list(e) for e in g.edges]})


def gen_complete(n: int) -> Graph:
    """Complete graph K_n, n >= 2."""
    if n < 2:
        raise ValueError("complete graph needs n >= 2")
    edges = tuple((u, v) for u in range(n) for v in range(u + 1, n))
    return Graph(n, edges)


def gen_cycle(n: int) -> Graph:
    """Cycle graph C_n, n >= 3."""
    if n < 3:
        raise ValueError("cycle graph needs n >= 3")
    edges = tuple(tuple(sorted((i, (i + 1) % n))) for i in range(n))
    return Graph(n, edges)


def gen_double_cone(n: int) -> Graph:
    """Double cone over C_n: two nonadjacent apexes joined to every cycle vertex.

    Vertex order is fixed as (u+, u-, x_0, ..., x_{n-1}), i.e. apexes get
    indices 0 and 1 and cycle vertex x_i gets index 2 + i. All closed-form
    double-cone results in the oracles module assume this order.
    """
    if n < 3:
        raise ValueError("double cone needs n >= 3")
    edges: list[tuple[int, int]] = []
    for i in range(n):
        xi = 2 + i
        edges.append(tuple(sorted((xi, 2 + (i + 1) % n))))
        edges.append((0, xi))
        edges.append((1, xi))
    labels = ("u+", "u-") + tuple(f"x{i}" for i in range(n))
    return Graph(n + 2, tuple(edges), labels=labels)


def arcs(g: Graph) -> ArcSet:
    """Canonical ArcSet of a graph: 2|E| arcs, lexicographic order."""
    pairs = sorted(p for u, v in g.edges for p in ((u, v), (v, u)))
    index = {p: i for i, p in enumerate(pairs)}
    reverse = np.array([index[(v, u)] for u, v in pairs], dtype=np.intp)
    in_lists: list[list[int]] = [[] for _ in range(g.n_vertices)]
    for i, (_, v) in enumerate(pairs):
        in_lists[v].append(i)
    return ArcSet(
        graph=g,
        arcs=tuple(Arc(u, v) for u, v in pairs),
        index=index,
        reverse=reverse,
        in_arcs=tuple(tuple(lst) for lst in in_lists),
    )


def adjacency_and_degree(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Adjacency matrix A and diagonal degree matrix D, both integer."""
    n = g.n_vertices
    A = np.zeros((n, n), dtype=np.int64)
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1
    D = np.diag(A.sum(axis=1))
    return A, D
