"""Directed triangles, arc partitions, and the next-arc permutation.

A partition of the symmetric arc set into directed triangles is what makes
the order-3 shift possible. Finding one is an exact-cover problem over the
arc/triangle incidence structure; it is solved by deterministic backtracking
with most-constrained-arc branching.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import InvalidVertexError, PartitionError, SearchBudgetExceeded
from .graph_core import ArcSet, Graph, arcs, gen_double_cone

__all__ = [
    "DirectedTriangle",
    "TrianglePartition",
    "NotTriangulable",
    "enumerate_directed_triangles",
    "find_partition",
    "canonical_double_cone_partition",
    "validate_partition",
    "triangles_at",
    "build_R",
    "parse_partition",
    "format_partition",
    "partition_to_json",
]


@dataclass(frozen=True, order=True)
class DirectedTriangle:
    """Three arcs forming a directed 3-cycle, stored as a vertex triple.

    The triple (u, v, w) means the arcs (u,v), (v,w), (w,u). It is kept in
    canonical rotation (smallest vertex first) so that equal triangles
    compare equal.
    """

    vertices: tuple[int, int, int]

    def __post_init__(self) -> None:
        u, v, w = self.vertices
        if len({u, v, w}) != 3:
            raise PartitionError(f"directed triangle needs three distinct vertices, got {self.vertices}")
        rot = min(range(3), key=lambda i: self.vertices[i])
        canon = self.vertices[rot:] + self.vertices[:rot]
        object.__setattr__(self, "vertices", canon)

    @property
    def arc_pairs(self) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
        u, v, w = self.vertices
        return ((u, v), (v, w), (w, u))

    def reversed(self) -> "DirectedTriangle":
        u, v, w = self.vertices
        return DirectedTriangle((u, w, v))


@dataclass(frozen=True)
class NotTriangulable:
    """Witness that no partition into directed triangles exists."""

    reason: str


@dataclass(frozen=True, eq=False)
class TrianglePartition:
    """A partition of all arcs into directed triangles, plus its next-arc map.

    ``tau`` is the permutation sending each arc index to the next arc in its
    owning triangle; ``arc_to_triangle[i]`` is the position (within
    ``triangles``) of the triangle owning arc i.
    """

    arcset: ArcSet
    triangles: tuple[DirectedTriangle, ...]
    tau: np.ndarray = field(repr=False)
    arc_to_triangle: np.ndarray = field(repr=False)

    @classmethod
    def from_triangles(cls, arcset: ArcSet, triangles) -> "TrianglePartition":
        """Build a partition from triangles, verifying exact cover of all arcs."""
        tris = tuple(sorted(triangles))
        violations = validate_partition(arcset.graph, tris, arcset=arcset)
        if violations:
            raise PartitionError("; ".join(violations))
        m = arcset.n_arcs
        tau = np.full(m, -1, dtype=np.intp)
        owner = np.full(m, -1, dtype=np.intp)
        for ti, tri in enumerate(tris):
            ids = [arcset.index[p] for p in tri.arc_pairs]
            for j in range(3):
                tau[ids[j]] = ids[(j + 1) % 3]
                owner[ids[j]] = ti
        return cls(arcset=arcset, triangles=tris, tau=tau, arc_to_triangle=owner)

    @property
    def size(self) -> int:
        return len(self.triangles)

    @property
    def graph(self) -> Graph:
        return self.arcset.graph

    def next_arc(self, i: int) -> int:
        return int(self.tau[i])

    def triangle_of_arc(self, i: int) -> DirectedTriangle:
        return self.triangles[int(self.arc_to_triangle[i])]


def enumerate_directed_triangles(g: Graph) -> list[DirectedTriangle]:
    """Every 3-clique of g in both cyclic orientations, sorted canonically."""
    adj: list[set[int]] = [set() for _ in range(g.n_vertices)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    out: list[DirectedTriangle] = []
    for u, v, w in combinations(range(g.n_vertices), 3):
        if v in adj[u] and w in adj[u] and w in adj[v]:
            out.append(DirectedTriangle((u, v, w)))
            out.append(DirectedTriangle((u, w, v)))
    return sorted(out)


def find_partition(g: Graph, limit: int | None = None):
    """Search for a partition of the arcs of g into directed triangles.

    Returns a TrianglePartition, or NotTriangulable with a witness reason.
    The search is exact cover by backtracking: branch on the uncovered arc
    with the fewest admissible triangles, trying triangles in canonical
    order, so the result is deterministic. ``limit`` caps the number of
    node expansions; exceeding it raises SearchBudgetExceeded.
    """
    aset = arcs(g)
    m = aset.n_arcs
    tris = enumerate_directed_triangles(g)
    if not tris:
        return NotTriangulable("no directed triangles")
    tri_arcs = [[aset.index[p] for p in t.arc_pairs] for t in tris]
    candidates: list[list[int]] = [[] for _ in range(m)]
    for ti, ids in enumerate(tri_arcs):
        for i in ids:
            candidates[i].append(ti)
    for i in range(m):
        if not candidates[i]:
            u, v = aset.arcs[i].pair
            return NotTriangulable(f"arc ({u}, {v}) lies in no directed triangle")
    if m % 3 != 0:
        return NotTriangulable(f"arc count {m} is not divisible by 3")

    covered = bytearray(m)
    conflicts = [0] * len(tris)  # number of already-covered arcs per triangle
    chosen: list[int] = []
    expansions = 0

    def place(ti: int) -> None:
        for i in tri_arcs[ti]:
            covered[i] = 1
            for tj in candidates[i]:
                conflicts[tj] += 1
        chosen.append(ti)

    def unplace(ti: int) -> None:
        chosen.pop()
        for i in tri_arcs[ti]:
            covered[i] = 0
            for tj in candidates[i]:
                conflicts[tj] -= 1

    def branch_arc() -> int | None:
        best, best_count = None, None
        for i in range(m):
            if covered[i]:
                continue
            count = sum(1 for ti in candidates[i] if conflicts[ti] == 0)
            if best_count is None or count < best_count:
                best, best_count = i, count
                if count == 0:
                    break
        return best

    def solve() -> bool:
        nonlocal expansions
        i = branch_arc()
        if i is None:
            return True
        for ti in candidates[i]:
            if conflicts[ti] != 0:
                continue
            expansions += 1
            if limit is not None and expansions > limit:
                raise SearchBudgetExceeded(f"triangulation search exceeded {limit} node expansions")
            place(ti)
            if solve():
                return True
            unplace(ti)
        return False

    if not solve():
        return NotTriangulable("search exhausted: arcs admit no exact cover by directed triangles")
    return TrianglePartition.from_triangles(aset, [tris[ti] for ti in chosen])


def canonical_double_cone_partition(n: int) -> TrianglePartition:
    """The standard 2n-triangle partition of the double cone over C_n.

    One triangle family circulates through the top apex along the cycle
    orientation, the other through the bottom apex against it.
    """
    g = gen_double_cone(n)
    tris = []
    for i in range(n):
        xi, xj = 2 + i, 2 + (i + 1) % n
        tris.append(DirectedTriangle((0, xi, xj)))
        tris.append(DirectedTriangle((1, xj, xi)))
    return TrianglePartition.from_triangles(arcs(g), tris)


def validate_partition(g: Graph, partition, arcset: ArcSet | None = None) -> list[str]:
    """Check a triangle collection against g; return a list of violations.

    Accepts a TrianglePartition, an iterable of DirectedTriangle, or an
    iterable of raw arc triples ((u,v), (v,w), (w,u)) so that a broken
    head-to-tail chain is reportable. An empty list means the collection
    is a valid partition of the arc set.
    """
    if isinstance(partition, TrianglePartition):
        items = partition.triangles
    else:
        items = tuple(partition)
    aset = arcset if arcset is not None else arcs(g)
    violations: list[str] = []
    count = np.zeros(aset.n_arcs, dtype=np.int64)
    for item in items:
        if isinstance(item, DirectedTriangle):
            pairs = item.arc_pairs
        else:
            pairs = tuple(tuple(a) for a in item)
            a1, a2, a3 = pairs
            if not (a1[1] == a2[0] and a2[1] == a3[0] and a3[1] == a1[0]):
                violations.append(f"broken cycle: arcs {pairs} are not head-to-tail")
            elif len({a1[0], a2[0], a3[0]}) != 3:
                violations.append(f"degenerate triangle: arcs {pairs} repeat a vertex")
        for u, v in pairs:
            if (u, v) not in aset.index:
                violations.append(f"({u}, {v}) is not an arc of the graph")
            else:
                count[aset.index[(u, v)]] += 1
    overlaps = [aset.arcs[i].pair for i in np.nonzero(count > 1)[0]]
    if overlaps:
        violations.append(f"overlapping arcs: {overlaps}")
    uncovered = [aset.arcs[i].pair for i in np.nonzero(count == 0)[0]]
    if uncovered:
        violations.append(f"uncovered arcs: {uncovered}")
    return violations


def triangles_at(partition: TrianglePartition, x: int) -> list[DirectedTriangle]:
    """The triangles of the partition with an arc terminating at x.

    There are exactly deg(x) of them, one per in-arc of x.
    """
    aset = partition.arcset
    if not 0 <= x < aset.n_vertices:
        raise InvalidVertexError(f"vertex {x} outside [0, {aset.n_vertices})")
    return [partition.triangle_of_arc(i) for i in aset.in_arcs[x]]


def build_R(partition: TrianglePartition) -> np.ndarray:
    """Vertex-by-triangle incidence: R[x, C] = 1 iff C has an arc into x."""
    aset = partition.arcset
    R = np.zeros((aset.n_vertices, partition.size), dtype=np.int64)
    for i in range(aset.n_arcs):
        R[aset.terminus(i), partition.arc_to_triangle[i]] = 1
    return R


def parse_partition(text: str, g: Graph) -> TrianglePartition:
    """Parse partition text: one triangle per line as ``u v w``.

    The triple means the arcs (u,v), (v,w), (w,u); ``#`` starts a comment.
    Raises PartitionError if the result is not a valid partition of g.
    """
    tris: list[DirectedTriangle] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise PartitionError(f"line {lineno}: expected three vertex indices, got {line!r}")
        try:
            u, v, w = (int(p) for p in parts)
        except ValueError:
            raise PartitionError(f"line {lineno}: non-integer token in {line!r}") from None
        tris.append(DirectedTriangle((u, v, w)))
    if not tris:
        raise PartitionError("partition text contains no triangles")
    return TrianglePartition.from_triangles(arcs(g), tris)


def format_partition(partition: TrianglePartition) -> str:
    return "".join("{} {} {}\n".format(*t.vertices) for t in partition.triangles)


def partition_to_json(partition: TrianglePartition) -> str:
    return json.dumps({"triangles": [list(t.vertices) for t in partition.triangles]})
