"""Exact k-mode computations.

* Black-box reductions from k-mode diameter and radius to the standard
  single-mode problems on a graph with about (k + 1) n vertices.
* Trivial k-mode APSP and the bounded-weight APSP built from sampled
  levels and capped min-plus products.
* The negative-triangle construction, which turns a weighted tripartite
  graph into a k-mode graph whose short a_i-d_i distances mark negative
  triangles.

Signed weights are confined to this module.  Matrices are int64 arrays
where ``INF`` means "no path"; negative entries are allowed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .graph import INF, GraphError, MultimodeGraph, build_graph, search

# Finite entries are shifted to _BIG before adding, so two "infinite" summands
# stay far below the int64 limit and are easy to recognise afterwards.
_BIG = 1 << 60
_LIMIT = 1 << 57


class NegativeCycleError(ArithmeticError):
    """A mode contains a cycle of negative total weight."""


# ---------------------------------------------------------------------------
# reductions to standard diameter / radius


@dataclass(frozen=True)
class ReducedGraph:
    """Single-mode graph whose diameter (radius) encodes the k-mode one.

    Layout: original vertices ``0..n-1``, then the copy of V for mode i at
    ``n + i*n .. n + i*n + n-1``, then hub ``x`` and, for radius, hub ``y``.
    """

    graph: MultimodeGraph
    W: int
    n: int
    k: int
    hub_x: int
    hub_y: int | None = None

    @property
    def offset(self) -> int:
        return 2 * self.W

    def copy_of(self, mode: int, v: int) -> int:
        return self.n + mode * self.n + v

    def recover(self, value: int) -> int:
        """Map the standard diameter/radius back to the k-mode value.

        3W and above means the k-mode value is infinite.  Values below 2W only
        occur for a single vertex, whose k-mode value is 0.
        """
        if value >= 3 * self.W:
            return INF
        return max(0, value - self.offset)


def pick_W(g: MultimodeGraph) -> int:
    """Smallest even integer strictly above n * M."""
    base = g.n * g.M
    return base + 2 if base % 2 == 0 else base + 1


def _layered_edges(g: MultimodeGraph, W: int) -> tuple[list[tuple[int, int, int, int]], int]:
    n, k = g.n, g.k
    x = n * (k + 1)
    edges = []
    for i in range(k):
        shift = n + i * n
        for u, v, w in g.edges(i):
            edges.append((0, shift + u, shift + v, w))
        for v in range(n):
            c = shift + v
            edges.append((0, v, c, W))
            edges.append((0, x, c, W // 2))
            if g.directed:
                edges.append((0, c, v, W))
                edges.append((0, c, x, W // 2))
    return edges, x


def reduce_to_standard_diameter(g: MultimodeGraph) -> ReducedGraph:
    """Standard graph with diameter 2W + D(G), or 3W when D(G) is infinite.

    For directed input the connector edges go both ways; the mode copies keep
    their orientation.
    """
    W = pick_W(g)
    edges, x = _layered_edges(g, W)
    std = build_graph(x + 1, 1, g.directed, edges)
    return ReducedGraph(std, W, g.n, g.k, x)


def reduce_to_standard_radius(g: MultimodeGraph) -> ReducedGraph:
    """As the diameter reduction plus hub y joined to every original vertex by 2W."""
    W = pick_W(g)
    edges, x = _layered_edges(g, W)
    y = x + 1
    for v in range(g.n):
        edges.append((0, y, v, 2 * W))
        if g.directed:
            edges.append((0, v, y, 2 * W))
    std = build_graph(y + 1, 1, g.directed, edges)
    return ReducedGraph(std, W, g.n, g.k, x, y)


# ---------------------------------------------------------------------------
# APSP


def kmode_apsp_trivial(g: MultimodeGraph) -> np.ndarray:
    """n single-source searches per mode, entrywise minimum over modes."""
    out = np.full((g.n, g.n), INF, dtype=np.int64)
    for i in range(g.k):
        for u in range(g.n):
            np.minimum(out[u], np.asarray(search(g, i, [u]), dtype=np.int64), out=out[u])
    return out


def _capped(A: np.ndarray, cap: int | None) -> np.ndarray:
    if cap is None:
        return A
    return np.where((A < INF) & (np.abs(A) > cap), INF, A)


def _check_range(A: np.ndarray) -> None:
    fin = A[A < INF]
    if fin.size and np.abs(fin).max() >= _LIMIT:
        raise ValueError("matrix entries too large for min-plus arithmetic")


def min_plus_product(A, B, cap: int | None = None, block: int | None = None) -> np.ndarray:
    """C[u, v] = min over t of A[u, t] + B[t, v], with INF absorbing.

    Finite entries whose absolute value exceeds ``cap`` are treated as INF
    before multiplying.  The inner dimension is processed in blocks.
    """
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise ValueError(f"cannot multiply shapes {A.shape} and {B.shape}")
    A = _capped(A, cap)
    B = _capped(B, cap)
    _check_range(A)
    _check_range(B)
    rows, inner = A.shape
    cols = B.shape[1]
    out = np.full((rows, cols), INF, dtype=np.int64)
    if inner == 0 or rows == 0 or cols == 0:
        return out
    if block is None:
        block = max(1, (1 << 22) // max(1, rows * cols))
    Af = np.where(A >= INF, _BIG, A)
    Bf = np.where(B >= INF, _BIG, B)
    for lo in range(0, inner, block):
        hi = min(inner, lo + block)
        part = (Af[:, lo:hi, None] + Bf[None, lo:hi, :]).min(axis=1)
        np.minimum(out, part, out=out)
    out[out >= _BIG // 2] = INF
    return out


@dataclass(frozen=True)
class SignedGraph:
    """Directed k-mode graph with integer weights of either sign."""

    n: int
    k: int
    edges: tuple  # (mode, u, v, w)

    @property
    def M(self) -> int:
        return max((abs(e[3]) for e in self.edges), default=1) or 1


def signed_graph(n: int, k: int, edges: Iterable[tuple[int, int, int, int]]) -> SignedGraph:
    es = []
    for e in edges:
        mode, u, v, w = (int(t) for t in e)
        if not 0 <= mode < k:
            raise GraphError(f"mode {mode} out of range [0,{k})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint of edge ({u},{v}) out of range [0,{n})")
        es.append((mode, u, v, w))
    return SignedGraph(n, k, tuple(es))


def _as_signed(g) -> SignedGraph:
    if isinstance(g, SignedGraph):
        return g
    arcs = []
    for mode, u, v, w in g.all_edges():
        arcs.append((mode, u, v, w))
        if not g.directed and u != v:
            arcs.append((mode, v, u, w))
    return SignedGraph(g.n, g.k, tuple(arcs))


def _one_hop(sg: SignedGraph) -> list[np.ndarray]:
    mats = []
    for _ in range(sg.k):
        m = np.full((sg.n, sg.n), INF, dtype=np.int64)
        np.fill_diagonal(m, 0)
        mats.append(m)
    for mode, u, v, w in sg.edges:
        if u == v:
            if w < 0:
                raise NegativeCycleError(f"negative self-loop at {u} in mode {mode}")
            continue
        mats[mode][u, v] = min(mats[mode][u, v], w)
    return mats


@dataclass
class LeveledSamples:
    """Nested samples with hop-limited distance tables.

    ``to_sample[i][j]`` is n x |S_i| (distance from u to s in mode j using
    at most ``hops[i]`` edges); ``from_sample[i][j]`` is |S_i| x n.  Entries
    are realised walks, so they never undercut the true distance; with high
    probability they are exact whenever a shortest path fits the hop bound.
    """

    samples: list[np.ndarray] = field(default_factory=list)
    hops: list[int] = field(default_factory=list)
    to_sample: list[list[np.ndarray]] = field(default_factory=list)
    from_sample: list[list[np.ndarray]] = field(default_factory=list)
    products: list[tuple[int, int, int]] = field(default_factory=list)
    tail_from: int | None = None


def _sample_size(n: int, prev: int, level: int, C: float = 9.0) -> int:
    want = math.ceil(C * n * math.log(n) / 1.5 ** level)
    return max(1, min(prev, want))


def _no_negative_diagonal(from_rows: np.ndarray, rows: np.ndarray, mode: int) -> None:
    # from_rows is |S| x n; entry (p, rows[p]) is a closed walk through rows[p]
    diag = from_rows[np.arange(len(rows)), rows]
    if (diag < 0).any():
        v = int(rows[int(np.argmax(diag < 0))])
        raise NegativeCycleError(f"negative cycle through {v} in mode {mode}")


def kmode_apsp_bounded(g, rng: np.random.Generator, trace: LeveledSamples | None = None) -> np.ndarray:
    """k-mode APSP from sampled levels and capped min-plus products.

    Level i keeps a random subset S_i of S_{i-1} with
    |S_i| = min(|S_{i-1}|, ceil(9 n ln n / 1.5^i)) and tables of distances
    to and from S_i using at most ceil(1.5^i) hops; each table comes from
    one capped product of the previous level's tables.  The answer is the
    minimum over levels of the stacked product A_i * B_i.  Once |S_i| drops
    to sqrt(n) the per-level combination is done pair by pair.

    Accepts a MultimodeGraph or a SignedGraph (directed, signed weights).
    Raises NegativeCycleError when a mode has a negative cycle.
    """
    sg = _as_signed(g)
    n, k = sg.n, sg.k
    lv = LeveledSamples() if trace is None else trace
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    M = sg.M
    base = _one_hop(sg)
    result = base[0].copy()
    for m in base[1:]:
        np.minimum(result, m, out=result)
    if n == 1:
        return result

    S = np.arange(n)
    hops = 1
    to_s = base
    from_s = base
    lv.samples.append(S)
    lv.hops.append(hops)
    lv.to_sample.append(to_s)
    lv.from_sample.append(from_s)
    tail = math.isqrt(n)
    level = 0
    while True:
        cap = M * hops
        if len(S) <= tail:
            if lv.tail_from is None:
                lv.tail_from = level
            for j in range(k):
                A = _capped(to_s[j], cap)
                B = _capped(from_s[j], cap)
                for t in range(len(S)):
                    col = A[:, t]
                    row = B[t, :]
                    ok_c = col < INF
                    ok_r = row < INF
                    if not ok_c.any() or not ok_r.any():
                        continue
                    cand = np.full((n, n), INF, dtype=np.int64)
                    cand[np.ix_(ok_c, ok_r)] = col[ok_c][:, None] + row[ok_r][None, :]
                    np.minimum(result, cand, out=result)
        else:
            A = np.hstack(to_s)
            B = np.vstack(from_s)
            lv.products.append((A.shape[0], A.shape[1], B.shape[1]))
            np.minimum(result, min_plus_product(A, B, cap), out=result)
        # walks of n edges: every simple path, and every cycle for the diagonal check
        if 2 * hops >= n:
            break

        level += 1
        size = _sample_size(n, len(S), level)
        nxt = np.sort(rng.choice(S, size=size, replace=False)) if size < len(S) else S
        pos_prev = {int(v): p for p, v in enumerate(S)}
        idx = np.array([pos_prev[int(v)] for v in nxt], dtype=np.int64)
        new_to, new_from = [], []
        for j in range(k):
            # d(u, s') via s in S_{i-1}: (n x |S_{i-1}|) * (|S_{i-1}| x |S_i|)
            to_j = min_plus_product(to_s[j], from_s[j][:, nxt], cap)
            np.minimum(to_j, to_s[j][:, idx], out=to_j)
            fr_j = min_plus_product(to_s[j][nxt, :], from_s[j], cap)
            np.minimum(fr_j, from_s[j][idx, :], out=fr_j)
            lv.products.append((n, len(S), len(nxt)))
            lv.products.append((len(nxt), len(S), n))
            _no_negative_diagonal(fr_j, nxt, j)
            new_to.append(to_j)
            new_from.append(fr_j)
        S = nxt
        hops = math.ceil(1.5 ** level)
        to_s, from_s = new_to, new_from
        lv.samples.append(S)
        lv.hops.append(hops)
        lv.to_sample.append(to_s)
        lv.from_sample.append(from_s)

    if (np.diag(result) < 0).any():
        v = int(np.argmax(np.diag(result) < 0))
        raise NegativeCycleError(f"negative cycle through {v}")
    return result


def signed_apsp_reference(g) -> np.ndarray:
    """Bellman-Ford style reference: per-mode Floyd-Warshall, entrywise min."""
    sg = _as_signed(g)
    out = np.full((sg.n, sg.n), INF, dtype=np.int64)
    for mat in _one_hop(sg):
        d = mat.copy()
        for t in range(sg.n):
            col = d[:, t]
            row = d[t, :]
            ok_c = col < INF
            ok_r = row < INF
            cand = np.full_like(d, INF)
            cand[np.ix_(ok_c, ok_r)] = col[ok_c][:, None] + row[ok_r][None, :]
            np.minimum(d, cand, out=d)
        if (np.diag(d) < 0).any():
            raise NegativeCycleError("negative cycle")
        np.minimum(out, d, out=out)
    return out


# ---------------------------------------------------------------------------
# negative triangle construction


@dataclass(frozen=True)
class NegTriInstance:
    """Tripartite graph on parts I, J, L of ``n`` vertices each.

    ``ij[(i, j)]``, ``jl[(j, l)]`` and ``li[(l, i)]`` hold edge weights in
    ``[-M, M]``; missing keys are missing edges.
    """

    n: int
    M: int
    ij: dict
    jl: dict
    li: dict

    def has_negative_triangle(self) -> bool:
        for (i, j), w1 in self.ij.items():
            for l in range(self.n):
                w2 = self.jl.get((j, l))
                if w2 is None:
                    continue
                w3 = self.li.get((l, i))
                if w3 is not None and w1 + w2 + w3 < 0:
                    return True
        return False


@dataclass(frozen=True)
class NegTriGraph:
    graph: MultimodeGraph
    answer: bool
    block: int  # layer width w
    groups: int  # g
    hub: int | None

    def a(self, i: int) -> int:
        return i

    def d(self, i: int) -> int:
        return 3 * self.block + i

    M: int = 1

    @property
    def threshold(self) -> int:
        return 30 * self.M


def random_negtri(n: int, M: int, rng: np.random.Generator, density: float = 1.0) -> NegTriInstance:
    parts = []
    for _ in range(3):
        d = {}
        for a in range(n):
            for b in range(n):
                if rng.random() < density:
                    d[(a, b)] = int(rng.integers(-M, M + 1))
        parts.append(d)
    return NegTriInstance(n, M, *parts)


def negtri_to_kmode(inst: NegTriInstance, k: int, radius_mode: bool = False) -> NegTriGraph:
    """k-mode graph on layers A, B, C, D (plus hub x for the radius flavour).

    Group triples (p, r, s) with g = floor(k^(1/3)) map to modes
    (p*g + r)*g + s; unused modes stay empty.  Every edge weight is shifted
    by 10M so all lie in [9M, 11M].
    """
    if k < 1:
        raise GraphError("k must be at least 1")
    M = inst.M
    if M < 1:
        raise GraphError("weight band M must be at least 1")
    for part in (inst.ij, inst.jl, inst.li):
        for key, w in part.items():
            if not -M <= w <= M:
                raise GraphError(f"weight {w} on {key} outside [-{M},{M}]")
            if not all(0 <= t < inst.n for t in key):
                raise GraphError(f"vertex in {key} out of range [0,{inst.n})")
    g = round(k ** (1 / 3))
    while g ** 3 > k:
        g -= 1
    while (g + 1) ** 3 <= k:
        g += 1
    w = max(1, math.ceil(inst.n / g))
    A, B, C, D = 0, w, 2 * w, 3 * w

    def member(group: int, idx: int) -> int | None:
        v = group * w + idx
        return v if v < inst.n else None

    shift = 10 * M
    edges = []
    for p in range(g):
        for r in range(g):
            for s in range(g):
                mode = (p * g + r) * g + s
                for x in range(w):
                    ip, jr, ls = member(p, x), member(r, x), member(s, x)
                    for y in range(w):
                        jy, ly, iy = member(r, y), member(s, y), member(p, y)
                        if ip is not None and jy is not None and (ip, jy) in inst.ij:
                            edges.append((mode, A + x, B + y, inst.ij[(ip, jy)] + shift))
                        if jr is not None and ly is not None and (jr, ly) in inst.jl:
                            edges.append((mode, B + x, C + y, inst.jl[(jr, ly)] + shift))
                        if ls is not None and iy is not None and (ls, iy) in inst.li:
                            edges.append((mode, C + x, D + y, inst.li[(ls, iy)] + shift))
    n_total = 4 * w
    hub = None
    if radius_mode:
        hub = 4 * w
        n_total += 1
        for i in range(w):
            for u in range(4 * w):
                if u != D + i and u != A + i:
                    edges.append((0, A + i, u, 30 * M - 1))
            edges.append((0, hub, A + i, 30 * M - 1))
    graph = build_graph(n_total, k, False, edges)
    return NegTriGraph(graph, inst.has_negative_triangle(), w, g, hub, M)
