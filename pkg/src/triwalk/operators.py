"""Dense operator builders for a (graph, partition) pair.

Everything is indexed by the canonical arc order from graph_core. The two
shifts are also kept as index permutations so their group identities
(S^2 = I, S_c^3 = I) can be checked exactly in integer arithmetic, not
within a tolerance.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .graph_core import ArcSet, Graph, adjacency_and_degree, arcs
from .triangulation import TrianglePartition, build_R

__all__ = [
    "OperatorSet",
    "LiftedSystem",
    "build_boundary",
    "build_flipflop",
    "build_moving_shift",
    "build_coin",
    "build_evolutions",
    "build_T",
    "build_T1_T2",
    "build_operator_set",
    "build_lifted",
    "matrix_to_csv",
    "matrix_to_json",
]


def _as_arcset(g) -> ArcSet:
    return g if isinstance(g, ArcSet) else arcs(g)


@dataclass(frozen=True, eq=False)
class OperatorSet:
    """All matrices of one walk instance, in canonical arc order."""

    arcset: ArcSet
    partition: TrianglePartition
    A: np.ndarray = field(repr=False)
    D: np.ndarray = field(repr=False)
    d: np.ndarray = field(repr=False)
    S: np.ndarray = field(repr=False)
    S_c: np.ndarray = field(repr=False)
    U: np.ndarray = field(repr=False)
    U_c: np.ndarray = field(repr=False)
    T: np.ndarray = field(repr=False)
    T1: np.ndarray = field(repr=False)
    T2: np.ndarray = field(repr=False)
    R: np.ndarray = field(repr=False)
    sigma: np.ndarray = field(repr=False)  # arc reversal permutation (S)
    tau: np.ndarray = field(repr=False)    # next-arc permutation (S_c)

    @property
    def graph(self) -> Graph:
        return self.arcset.graph

    @property
    def n_arcs(self) -> int:
        return self.arcset.n_arcs


@dataclass(frozen=True, eq=False)
class LiftedSystem:
    """The arc-space lift L and its companion block matrices.

    L maps three copies of vertex space into arc space; the walk acts on
    its image through Ttilde (U_c L = L Ttilde), and Bmat witnesses that
    ker L = ker(Ttilde^3 + I).
    """

    L: np.ndarray = field(repr=False)
    Ttilde: np.ndarray = field(repr=False)
    Bmat: np.ndarray = field(repr=False)


def build_boundary(g) -> np.ndarray:
    """Boundary operator: row v has 1/sqrt(deg v) at each arc ending in v."""
    aset = _as_arcset(g)
    deg = aset.graph.degrees().astype(float)
    d = np.zeros((aset.n_vertices, aset.n_arcs))
    for i, arc in enumerate(aset.arcs):
        d[arc.terminus, i] = 1.0 / np.sqrt(deg[arc.terminus])
    return d


def build_flipflop(g) -> np.ndarray:
    """Flip-flop shift: the permutation matrix of arc reversal."""
    aset = _as_arcset(g)
    m = aset.n_arcs
    S = np.zeros((m, m))
    S[aset.reverse, np.arange(m)] = 1.0
    return S


def build_moving_shift(partition: TrianglePartition) -> np.ndarray:
    """Moving shift: the permutation matrix of the next-arc map.

    Column b carries a single 1 in row tau(b), so the operator sends the
    basis vector of an arc to that of its next arc; its cube is the
    identity because every triangle closes after three steps.
    """
    m = partition.arcset.n_arcs
    S_c = np.zeros((m, m))
    S_c[partition.tau, np.arange(m)] = 1.0
    return S_c


def build_coin(g) -> np.ndarray:
    """Grover coin 2 d* d - I, an involution acting within each vertex star."""
    d = build_boundary(g)
    m = d.shape[1]
    return 2.0 * d.T @ d - np.eye(m)


def build_T(g) -> np.ndarray:
    """Discriminant operator d S d*, equal to the degree-normalized adjacency."""
    aset = _as_arcset(g)
    return build_boundary(aset) @ build_flipflop(aset) @ build_boundary(aset).T


def build_T1_T2(g, partition: TrianglePartition) -> tuple[np.ndarray, np.ndarray]:
    """Discriminants of the moving shift: d S_c d* and d S_c^2 d*.

    Both coincide with the flip-flop discriminant because summing over a
    triangle partition visits every arc exactly once.
    """
    aset = _as_arcset(g)
    d = build_boundary(aset)
    S_c = build_moving_shift(partition)
    return d @ S_c @ d.T, d @ S_c @ S_c @ d.T


def build_evolutions(g, partition: TrianglePartition) -> tuple[np.ndarray, np.ndarray]:
    """Time evolutions U = S (2d*d - I) and U_c = S_c (2d*d - I)."""
    aset = _as_arcset(g)
    coin = build_coin(aset)
    return build_flipflop(aset) @ coin, build_moving_shift(partition) @ coin


def build_operator_set(g, partition: TrianglePartition) -> OperatorSet:
    """Assemble every operator for one (graph, partition) pair."""
    aset = _as_arcset(g)
    A, D = adjacency_and_degree(aset.graph)
    d = build_boundary(aset)
    S = build_flipflop(aset)
    S_c = build_moving_shift(partition)
    coin = 2.0 * d.T @ d - np.eye(aset.n_arcs)
    T = d @ S @ d.T
    return OperatorSet(
        arcset=aset,
        partition=partition,
        A=A,
        D=D,
        d=d,
        S=S,
        S_c=S_c,
        U=S @ coin,
        U_c=S_c @ coin,
        T=T,
        T1=d @ S_c @ d.T,
        T2=d @ S_c @ S_c @ d.T,
        R=build_R(partition),
        sigma=aset.reverse.copy(),
        tau=partition.tau.copy(),
    )


def build_lifted(g, partition: TrianglePartition) -> LiftedSystem:
    """Build L = [d* | S_c d* | S_c^2 d*] and its block companions."""
    aset = _as_arcset(g)
    d = build_boundary(aset)
    S_c = build_moving_shift(partition)
    T = build_T(aset)
    n = aset.n_vertices
    dstar = d.T
    L = np.hstack([dstar, S_c @ dstar, S_c @ S_c @ dstar])
    I = np.eye(n)
    O = np.zeros((n, n))
    Ttilde = np.block([
        [O, O, -I],
        [I, 2 * T, 2 * T],
        [O, -I, O],
    ])
    Bmat = np.block([
        [0.5 * I, O, O],
        [T, 0.5 * I, T],
        [T, O, 0.5 * I],
    ])
    return LiftedSystem(L=L, Ttilde=Ttilde, Bmat=Bmat)


def matrix_to_csv(M: np.ndarray) -> str:
    """Row-major CSV with 17 significant digits (round-trip safe)."""
    M = np.asarray(M)
    lines = []
    for row in np.atleast_2d(M):
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def matrix_to_json(M: np.ndarray) -> str:
    M = np.asarray(M)
    if np.iscomplexobj(M):
        payload = [[{"re": float(v.real), "im": float(v.imag)} for v in row] for row in np.atleast_2d(M)]
    else:
        payload = [[float(v) for v in row] for row in np.atleast_2d(M)]
    return json.dumps({"shape": list(M.shape), "rows": payload})
