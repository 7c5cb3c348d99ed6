"""Graph generators and oracles shared by the test modules.

The oracles here never call into the package: they work from the raw edge
list that the generator also hands to ``build_graph``.  ``fw_apsp`` is a
pure-Python Floyd-Warshall for small inputs; ``sp_apsp`` runs scipy's
shortest-path routine per mode for the larger sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import csgraph_from_dense, shortest_path

from multimode.graph import INF, MultimodeGraph, build_graph


@dataclass
class Case:
    g: MultimodeGraph
    n: int
    k: int
    directed: bool
    edges: list  # (mode, u, v, w)


def make(n: int, k: int, directed: bool, edges) -> Case:
    edges = [tuple(int(x) for x in e) for e in edges]
    return Case(build_graph(n, k, directed, edges), n, k, directed, edges)


# ---------------------------------------------------------------- oracles

def fw_mode(n: int, directed: bool, arcs) -> list[list[float]]:
    d = [[math.inf] * n for _ in range(n)]
    for v in range(n):
        d[v][v] = 0
    for u, v, w in arcs:
        if w < d[u][v]:
            d[u][v] = w
        if not directed and w < d[v][u]:
            d[v][u] = w
    for m in range(n):
        dm = d[m]
        for u in range(n):
            du = d[u]
            via = du[m]
            if via == math.inf:
                continue
            for v in range(n):
                if via + dm[v] < du[v]:
                    du[v] = via + dm[v]
    return d


def fw_apsp(case: Case) -> list[list[float]]:
    """k-mode distances by per-mode Floyd-Warshall; math.inf = unreachable."""
    n = case.n
    best = [[math.inf] * n for _ in range(n)]
    for v in range(n):
        best[v][v] = 0
    for i in range(case.k):
        d = fw_mode(n, case.directed, [(u, v, w) for m, u, v, w in case.edges if m == i])
        for u in range(n):
            for v in range(n):
                if d[u][v] < best[u][v]:
                    best[u][v] = d[u][v]
    return best


def sp_mode(n: int, directed: bool, arcs) -> np.ndarray:
    dense = np.full((n, n), np.inf)
    for u, v, w in arcs:
        if u != v:
            dense[u, v] = min(dense[u, v], w)
            if not directed:
                dense[v, u] = min(dense[v, u], w)
    graph = csgraph_from_dense(dense, null_value=np.inf)
    return shortest_path(graph, method="D", directed=True)


def sp_apsp(case: Case) -> np.ndarray:
    """k-mode distances via scipy, as floats with np.inf = unreachable."""
    n = case.n
    if n == 0:
        return np.zeros((0, 0))
    out = np.full((n, n), np.inf)
    for i in range(case.k):
        d = sp_mode(n, case.directed, [(u, v, w) for m, u, v, w in case.edges if m == i])
        np.minimum(out, d, out=out)
    return out


def as_int(x: float) -> int:
    return INF if x == math.inf else int(x)


@dataclass
class Params:
    ecc: list[int]
    diameter: int
    radius: int


def params(case: Case) -> Params:
    d = sp_apsp(case)
    ecc = [as_int(float(row.max())) for row in d]
    return Params(ecc, max(ecc), min(ecc))


def mode_dist(case: Case, mode: int) -> np.ndarray:
    return sp_mode(case.n, case.directed, [(u, v, w) for m, u, v, w in case.edges if m == mode])


# ---------------------------------------------------------------- generators

def random_graph(rng, n: int, k: int, p: float, M: int = 1, connected: bool = True, directed: bool = False) -> Case:
    """Erdos-Renyi per mode, plus a random spanning tree per mode when ``connected``."""
    edges = []
    for i in range(k):
        for u in range(n):
            for v in range(n if directed else u + 1):
                if u != v and rng.random() < p:
                    edges.append((i, u, v, int(rng.integers(1, M + 1))))
        if connected:
            perm = rng.permutation(n)
            for j in range(1, n):
                parent = perm[int(rng.integers(j))]
                edges.append((i, int(perm[j]), int(parent), int(rng.integers(1, M + 1))))
    return make(n, k, directed, edges)


def random_digraph(rng, n: int, probs, orders=None, M: int = 1) -> Case:
    """Directed graph with one edge probability per mode.

    With ``orders`` (one rank array per mode) only edges going forward in
    that mode's order are kept, so each mode is acyclic.
    """
    edges = []
    for i, p in enumerate(probs):
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < p:
                    if orders is not None and orders[i][u] > orders[i][v]:
                        continue
                    edges.append((i, u, v, int(rng.integers(1, M + 1))))
    return make(n, len(probs), True, edges)


def ranks(order) -> list[int]:
    r = [0] * len(order)
    for pos, v in enumerate(order):
        r[int(v)] = pos
    return r


def aligned_dag(rng, n: int, p1: float, p2: float) -> Case:
    """Two DAG modes whose topological orders are mutually reversed."""
    order = list(rng.permutation(n))
    return random_digraph(rng, n, [p1, p2], [ranks(order), ranks(order[::-1])])


def path_edges(n: int, mode: int = 0, w: int = 1) -> list:
    return [(mode, v, v + 1, w) for v in range(n - 1)]


def min_diameter(case: Case, mode: int) -> int:
    """Largest min(d(u,v), d(v,u)) over pairs of one directed mode."""
    d = mode_dist(case, mode)
    best = np.minimum(d, d.T).max() if case.n else 0
    return as_int(float(best))
