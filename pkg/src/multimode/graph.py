"""Multimode graph container, per-mode searches, balls and brute-force oracles.

A k-multimode graph is one vertex set carrying k independent edge sets
("modes").  The distance between two vertices is the minimum over modes of
the single-mode shortest-path distance; paths never switch modes.

Distances are plain Python ints.  ``INF`` is a 64-bit sentinel larger than any
reachable distance, and ``sat_add`` keeps it absorbing under addition.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

INF: int = int(np.iinfo(np.int64).max)


class GraphError(ValueError):
    """Raised when a graph or a query on it is malformed."""


def sat_add(a: int, b: int) -> int:
    if a >= INF or b >= INF:
        return INF
    return a + b


def fmt_dist(d: int) -> str:
    return "inf" if d >= INF else str(d)


@dataclass(frozen=True, eq=False)
class MultimodeGraph:
    """Immutable k-mode graph in per-mode CSR form.

    ``fwd[i]`` and ``rev[i]`` are ``(offsets, targets, weights)`` triples of
    read-only int64 arrays.  For undirected graphs ``rev`` aliases ``fwd``.
    """

    n: int
    k: int
    directed: bool
    fwd: tuple
    rev: tuple
    max_weight: int
    unit: tuple  # per mode: all weights equal 1
    _lists: tuple = field(repr=False)

    @property
    def M(self) -> int:
        return self.max_weight

    def edge_count(self, mode: int | None = None) -> int:
        """Stored arcs (undirected edges count once)."""
        modes = range(self.k) if mode is None else [mode]
        return sum(len(self.edges(i)) for i in modes)

    def edges(self, mode: int) -> list[tuple[int, int, int]]:
        """Edge list ``(u, v, w)`` of one mode, each undirected edge once."""
        off, tgt, wt = self.fwd[mode]
        out = []
        for u in range(self.n):
            for j in range(off[u], off[u + 1]):
                v = int(tgt[j])
                if self.directed or u <= v:
                    out.append((u, v, int(wt[j])))
        return out

    def all_edges(self) -> list[tuple[int, int, int, int]]:
        return [(i, u, v, w) for i in range(self.k) for (u, v, w) in self.edges(i)]

    def neighbors(self, mode: int, v: int, reverse: bool = False) -> list[tuple[int, int]]:
        adj = self._lists[mode][1 if reverse else 0]
        return list(adj[v])


def _csr(n: int, arcs: list[tuple[int, int, int]]) -> tuple:
    arcs.sort(key=lambda a: (a[0], a[1], a[2]))
    off = np.zeros(n + 1, dtype=np.int64)
    for u, _, _ in arcs:
        off[u + 1] += 1
    np.cumsum(off, out=off)
    tgt = np.array([a[1] for a in arcs], dtype=np.int64)
    wt = np.array([a[2] for a in arcs], dtype=np.int64)
    for arr in (off, tgt, wt):
        arr.setflags(write=False)
    return off, tgt, wt


def _as_lists(n: int, csr: tuple) -> list[list[tuple[int, int]]]:
    off, tgt, wt = (a.tolist() for a in csr)
    return [list(zip(tgt[off[u]:off[u + 1]], wt[off[u]:off[u + 1]])) for u in range(n)]


def build_graph(
    n: int,
    k: int,
    directed: bool,
    edges: Iterable[tuple[int, int, int, int]],
) -> MultimodeGraph:
    """Build a graph from ``(mode, u, v, w)`` tuples.

    Undirected edges are mirrored.  Parallel edges are kept.  ``M`` is the
    largest weight, or 1 when the graph has no edges.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    if k < 1:
        raise GraphError(f"mode count must be >= 1, got {k}")
    per_fwd: list[list[tuple[int, int, int]]] = [[] for _ in range(k)]
    per_rev: list[list[tuple[int, int, int]]] = [[] for _ in range(k)]
    max_w = None
    for e in edges:
        mode, u, v, w = (int(x) for x in e)
        if not 0 <= mode < k:
            raise GraphError(f"mode {mode} out of range [0,{k})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint of edge ({u},{v}) out of range [0,{n})")
        if w < 0:
            raise GraphError(f"negative weight {w} on edge ({u},{v})")
        per_fwd[mode].append((u, v, w))
        if directed:
            per_rev[mode].append((v, u, w))
        elif u != v:
            per_fwd[mode].append((v, u, w))
        max_w = w if max_w is None else max(max_w, w)
    fwd = tuple(_csr(n, per_fwd[i]) for i in range(k))
    rev = tuple(_csr(n, per_rev[i]) for i in range(k)) if directed else fwd
    unit = tuple(bool(np.all(fwd[i][2] == 1)) for i in range(k))
    lists = []
    for i in range(k):
        f = _as_lists(n, fwd[i])
        r = _as_lists(n, rev[i]) if directed else f
        lists.append((f, r))
    return MultimodeGraph(
        n=n,
        k=k,
        directed=bool(directed),
        fwd=fwd,
        rev=rev,
        max_weight=1 if max_w is None else max_w,
        unit=unit,
        _lists=tuple(lists),
    )


@dataclass(frozen=True)
class DistanceMap:
    """Distances from a source (vertex or set) in one mode."""

    source: object
    mode: int
    reverse: bool
    dist: np.ndarray

    def __getitem__(self, v: int) -> int:
        return int(self.dist[v])

    def __len__(self) -> int:
        return len(self.dist)

    def tolist(self) -> list[int]:
        return [int(x) for x in self.dist]


def _check_vertex(g: MultimodeGraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range [0,{g.n})")


def _check_mode(g: MultimodeGraph, mode: int) -> None:
    if not 0 <= mode < g.k:
        raise GraphError(f"mode {mode} out of range [0,{g.k})")


def search(
    g: MultimodeGraph,
    mode: int,
    sources: Iterable[int],
    reverse: bool = False,
) -> list[int]:
    """Multi-source distances in one mode as a plain list (INF = unreachable).

    BFS when every weight of the mode is 1, binary-heap Dijkstra otherwise.
    With ``reverse`` the result holds distances *to* the sources.
    """
    adj = g._lists[mode][1 if reverse else 0]
    dist = [INF] * g.n
    if g.unit[mode]:
        q: deque[int] = deque()
        for s in sources:
            if dist[s] != 0:
                dist[s] = 0
                q.append(s)
        while q:
            u = q.popleft()
            du = dist[u] + 1
            for v, _ in adj[u]:
                if dist[v] == INF:
                    dist[v] = du
                    q.append(v)
        return dist
    heap = []
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            heap.append((0, s))
    heapq.heapify(heap)
    while heap:
        du, u = heapq.heappop(heap)
        if du > dist[u]:
            continue
        for v, w in adj[u]:
            nd = du + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def kmode_search(g: MultimodeGraph, sources: Iterable[int], reverse: bool = False) -> list[int]:
    """k-mode distances from a source set: per-vertex minimum over modes."""
    srcs = list(sources)
    best = search(g, 0, srcs, reverse)
    for i in range(1, g.k):
        d = search(g, i, srcs, reverse)
        best = [a if a <= b else b for a, b in zip(best, d)]
    return best


def _to_map(source: object, mode: int, reverse: bool, dist: list[int]) -> DistanceMap:
    arr = np.array(dist, dtype=np.int64)
    arr.setflags(write=False)
    return DistanceMap(source=source, mode=mode, reverse=reverse, dist=arr)


def sssp(g: MultimodeGraph, mode: int, source: int, reverse: bool = False) -> DistanceMap:
    _check_mode(g, mode)
    _check_vertex(g, source)
    return _to_map(source, mode, reverse, search(g, mode, [source], reverse))


def multi_source_sssp(
    g: MultimodeGraph, mode: int, sources: Iterable[int], reverse: bool = False
) -> DistanceMap:
    _check_mode(g, mode)
    srcs = sorted(set(int(s) for s in sources))
    if not srcs:
        raise GraphError("multi-source search needs at least one source")
    for s in srcs:
        _check_vertex(g, s)
    return _to_map(frozenset(srcs), mode, reverse, search(g, mode, srcs, reverse))


def ball(g: MultimodeGraph, mode: int, v: int, r) -> set[int]:
    """Vertices at mode distance strictly below ``r`` (``r`` may be a Fraction)."""
    if r < 0:
        raise GraphError("ball radius must be nonnegative")
    _check_mode(g, mode)
    _check_vertex(g, v)
    d = search(g, mode, [v])
    return {u for u in range(g.n) if d[u] < INF and d[u] < r}


def kmode_distance(g: MultimodeGraph, u: int, v: int) -> int:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        return 0
    return min(search(g, i, [u])[v] for i in range(g.k))


@dataclass(frozen=True)
class ExactParameters:
    ecc: list[int]
    diameter: int
    radius: int
    diameter_pair: tuple[int, int] | None
    center: int | None


def exact_apsp(g: MultimodeGraph) -> np.ndarray:
    """Dense k-mode distance matrix from k*n single-source searches."""
    out = np.full((g.n, g.n), INF, dtype=np.int64)
    for u in range(g.n):
        out[u] = kmode_search(g, [u])
    return out


def exact_parameters(g: MultimodeGraph) -> ExactParameters:
    """Eccentricities, diameter and radius by brute force.

    Ties go to the lowest vertex id (diameter pair: lowest source, then
    lowest target).
    """
    if g.n == 0:
        return ExactParameters([], 0, INF, None, None)
    ecc: list[int] = []
    far: list[int] = []
    for u in range(g.n):
        d = kmode_search(g, [u])
        e = max(d)
        ecc.append(e)
        far.append(d.index(e))
    diam = max(ecc)
    src = ecc.index(diam)
    rad = min(ecc)
    return ExactParameters(ecc, diam, rad, (src, far[src]), ecc.index(rad))


def induced_subgraph(
    g: MultimodeGraph, A: Iterable[int]
) -> tuple[MultimodeGraph, list[int], dict[int, int]]:
    """Subgraph on ``A`` relabelled 0..|A|-1.

    Returns the graph, ``new_to_old`` (list) and ``old_to_new`` (dict).
    """
    new_to_old = sorted(set(int(a) for a in A))
    for a in new_to_old:
        _check_vertex(g, a)
    old_to_new = {v: i for i, v in enumerate(new_to_old)}
    edges = [
        (i, old_to_new[u], old_to_new[v], w)
        for (i, u, v, w) in g.all_edges()
        if u in old_to_new and v in old_to_new
    ]
    return build_graph(len(new_to_old), g.k, g.directed, edges), new_to_old, old_to_new


def single_mode(g: MultimodeGraph, mode: int) -> MultimodeGraph:
    """One mode of ``g`` as a stand-alone 1-mode graph."""
    return build_graph(g.n, 1, g.directed, [(0, u, v, w) for u, v, w in g.edges(mode)])


def from_modes(n: int, directed: bool, modes: Sequence[Iterable[tuple]]) -> MultimodeGraph:
    """Convenience: ``modes[i]`` is an iterable of ``(u, v)`` or ``(u, v, w)``."""
    edges = []
    for i, es in enumerate(modes):
        for e in es:
            u, v = e[0], e[1]
            w = e[2] if len(e) > 2 else 1
            edges.append((i, u, v, w))
    return build_graph(n, len(modes), directed, edges)
