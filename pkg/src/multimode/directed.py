"""Directed multimode graphs: SCCs, alignment, DAG diameter and finiteness tests.

The finiteness decision for general 2-mode digraphs works on plain
adjacency lists (``_Di2``) because its recursion adds auxiliary hub vertices
that never exist in the input graph.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Sequence

from .graph import INF, GraphError, MultimodeGraph, kmode_search


# ---------------------------------------------------------------- SCC / condensation

@dataclass
class Condensation:
    comp: list[int]  # SCC id per vertex; ids are a topological order
    members: list[list[int]]
    succ: list[set[int]]  # condensation DAG

    @property
    def size(self) -> int:
        return len(self.members)


def strongly_connected(n: int, out: Sequence[Sequence[int]]) -> Condensation:
    """Iterative lowlink SCC; components numbered in topological order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    raw = [-1] * n
    found = 0
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = out[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    raw[w] = found
                    if w == v:
                        break
                found += 1
    # lowlink emits sinks first
    comp = [found - 1 - c for c in raw]
    members: list[list[int]] = [[] for _ in range(found)]
    for v in range(n):
        members[comp[v]].append(v)
    succ: list[set[int]] = [set() for _ in range(found)]
    for v in range(n):
        for w in out[v]:
            if comp[v] != comp[w]:
                succ[comp[v]].add(comp[w])
    return Condensation(comp, members, succ)


def _mode_out(g: MultimodeGraph, mode: int) -> list[list[int]]:
    off, tgt, _ = g.fwd[mode]
    off_l, tgt_l = off.tolist(), tgt.tolist()
    return [tgt_l[off_l[u]:off_l[u + 1]] for u in range(g.n)]


def condense(g: MultimodeGraph, mode: int) -> Condensation:
    return strongly_connected(g.n, _mode_out(g, mode))


def _topo_order(n: int, out: Sequence[Sequence[int]]) -> list[int] | None:
    """Kahn's algorithm, smallest id first; None on a cycle."""
    indeg = [0] * n
    for u in range(n):
        for v in out[u]:
            indeg[v] += 1
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    return order if len(order) == n else None


def topological_order(g: MultimodeGraph, mode: int) -> list[int]:
    order = _topo_order(g.n, _mode_out(g, mode))
    if order is None:
        raise GraphError(f"mode {mode} has a cycle")
    return order


def _require_directed(g: MultimodeGraph, k: int | None = None) -> None:
    if not g.directed:
        raise GraphError("directed graph required")
    if k is not None and g.k != k:
        raise GraphError(f"{k}-mode graph required, got k={g.k}")


# ---------------------------------------------------------------- min-eccentricity

def _reaches_all_later(order: list[int], preds: Sequence[Sequence[int]]) -> list[bool]:
    """For nodes in topological ``order``: does position i reach every later position?

    Uses the last-reacher DP: ell(v) is the largest position that reaches v,
    and i reaches everything after it iff every later node has ell >= i.
    """
    pos = {v: i for i, v in enumerate(order)}
    N = len(order)
    ell = [-1] * N
    for j, v in enumerate(order):
        best = -1
        for u in preds[v]:
            pu = pos[u]
            cand = pu if pu > ell[pu] else ell[pu]
            if cand > best:
                best = cand
        ell[j] = best
    eq_count = [0] * N
    for j in range(N):
        if ell[j] >= 0:
            eq_count[ell[j]] += 1
    s = [0] * N
    for i in range(N - 2, -1, -1):
        s[i] = s[i + 1] + eq_count[i]
    return [s[i] == N - 1 - i for i in range(N)]


def _finite_min_ecc_dag(N: int, succ: Sequence[Sequence[int]]) -> list[bool]:
    order = _topo_order(N, succ)
    assert order is not None
    preds: list[list[int]] = [[] for _ in range(N)]
    for u in range(N):
        for v in succ[u]:
            preds[v].append(u)
    fwd = _reaches_all_later(order, preds)
    # reversed graph, reversed order: "all earlier nodes reach me"
    bwd = _reaches_all_later(order[::-1], [list(s) for s in succ])
    result = [False] * N
    for i, v in enumerate(order):
        result[v] = fwd[i] and bwd[N - 1 - i]
    return result


def finite_min_ecc(g: MultimodeGraph, mode: int = 0) -> set[int]:
    """Vertices whose min-eccentricity (min of both directions) is finite in one mode."""
    _require_directed(g)
    cond = condense(g, mode)
    fin = _finite_min_ecc_dag(cond.size, [sorted(s) for s in cond.succ])
    return {v for v in range(g.n) if fin[cond.comp[v]]}


# ---------------------------------------------------------------- DAG diameter

def is_aligned(g: MultimodeGraph) -> list[int] | None:
    """Order increasing in mode 0's topological order and decreasing in mode 1's, if any."""
    _require_directed(g, 2)
    topological_order(g, 0)
    topological_order(g, 1)
    out0 = _mode_out(g, 0)
    out1 = _mode_out(g, 1)
    merged = [list(out0[u]) for u in range(g.n)]
    for u in range(g.n):
        for v in out1[u]:
            merged[v].append(u)
    return _topo_order(g.n, merged)


def _bounded_search(adj, n: int, src: int, pos: list[int], lo: int, hi: int, unit: bool) -> list[int]:
    """Distances from ``src`` visiting only vertices with lo <= pos < hi."""
    dist = [INF] * n
    dist[src] = 0
    heap = [(0, src)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > dist[u]:
            continue
        for v, w in adj[u]:
            if not lo <= pos[v] < hi:
                continue
            nd = du + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def dag_min_diameter_2approx(g: MultimodeGraph, mode: int = 0) -> int:
    """Estimate of the min-diameter of one acyclic mode, within a factor of 2.

    Splits the topological order at its middle vertex m and measures the
    farthest right-half vertex from m and the farthest left-half vertex
    into m, then recurses on both halves.
    """
    _require_directed(g)
    order = topological_order(g, mode)
    if len(finite_min_ecc(g, mode)) != g.n:
        return INF
    n = g.n
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    fwd, rev = g._lists[mode]
    unit = g.unit[mode]
    best = 0
    stack = [(0, n)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        mid = (lo + hi) // 2
        m = order[mid]
        d_out = _bounded_search(fwd, n, m, pos, mid, hi, unit)
        d_in = _bounded_search(rev, n, m, pos, lo, mid + 1, unit)
        for i in range(mid + 1, hi):
            best = max(best, d_out[order[i]])
        for i in range(lo, mid):
            best = max(best, d_in[order[i]])
        stack.append((lo, mid))
        stack.append((mid + 1, hi))
    return best


def two_mode_dag_diameter_2approx(g: MultimodeGraph) -> int:
    """INF when the pair is not aligned, else the larger per-mode min-diameter estimate."""
    _require_directed(g, 2)
    if is_aligned(g) is None:
        return INF
    return max(dag_min_diameter_2approx(g, 0), dag_min_diameter_2approx(g, 1))


# ---------------------------------------------------------------- 2-mode DAG eccentricity

def dag_2mode_finite_ecc(g: MultimodeGraph) -> set[int]:
    """Vertices of finite 2-mode eccentricity in a 2-mode DAG, in linear time."""
    _require_directed(g, 2)
    n = g.n
    ord1 = topological_order(g, 0)
    ord2 = topological_order(g, 1)
    out = (_mode_out(g, 0), _mode_out(g, 1))
    preds: tuple[list[list[int]], list[list[int]]] = ([[] for _ in range(n)], [[] for _ in range(n)])
    for i in (0, 1):
        for u in range(n):
            for v in out[i][u]:
                preds[i][v].append(u)

    # step 1: peel the mode-0-last vertex; good iff it is also mode-1-first
    visited = [False] * n
    collected: list[int] = []
    bad: set[int] = set()
    p2 = 0
    for p1 in range(n - 1, -1, -1):
        a = ord1[p1]
        while visited[ord2[p2]]:
            p2 += 1
        if ord2[p2] == a:
            collected.append(a)
        else:
            bad.add(a)
        visited[a] = True
    good = collected[::-1]  # increasing in mode 0, decreasing in mode 1
    k = len(good)
    pos1 = {v: i for i, v in enumerate(ord1)}
    pos2 = {v: i for i, v in enumerate(ord2)}
    for i in range(k - 1):
        assert pos1[good[i]] < pos1[good[i + 1]] and pos2[good[i]] > pos2[good[i + 1]]
    idx = {v: i for i, v in enumerate(good)}

    # step 2: last good reacher in mode 0, first good reacher in mode 1
    ell0 = [-1] * n
    for v in ord1:
        best = -1
        for u in preds[0][v]:
            cand = max(idx.get(u, -1), ell0[u])
            if cand > best:
                best = cand
        ell0[v] = best
    ell1 = [k] * n
    for v in ord2:
        best = k
        for u in preds[1][v]:
            cand = min(idx.get(u, k), ell1[u])
            if cand < best:
                best = cand
        ell1[v] = best

    eq0 = [0] * k
    for j in range(k):
        if ell0[good[j]] >= 0:
            eq0[ell0[good[j]]] += 1
    s0 = [0] * k
    for i in range(k - 2, -1, -1):
        s0[i] = s0[i + 1] + eq0[i]
    eq1 = [0] * k
    for j in range(k):
        if ell1[good[j]] < k:
            eq1[ell1[good[j]]] += 1
    s1 = [0] * k
    for i in range(1, k):
        s1[i] = s1[i - 1] + eq1[i]
    alive = [s0[i] == k - 1 - i and s1[i] == i for i in range(k)]
    for i in range(k):
        if not alive[i]:
            bad.add(good[i])

    # step 3: each bad vertex rules out the good interval strictly between its reachers
    diff = [0] * (k + 1)
    for v in bad:
        lo, hi = ell0[v] + 1, ell1[v] - 1
        if lo <= hi:
            diff[lo] += 1
            diff[hi + 1] -= 1
    result = set()
    run = 0
    for i in range(k):
        run += diff[i]
        if alive[i] and run == 0:
            result.add(good[i])
    return result


# ---------------------------------------------------------------- finite 2-mode diameter

@dataclass
class FinitenessVerdict:
    finite: bool
    witness: tuple[int, int] | None = None
    reason: str = ""
    depth: int = 0
    nodes: int = 0
    stats: dict = field(default_factory=dict)


class _Di2:
    """Unweighted 2-mode digraph with hub markers, used inside the recursion."""

    __slots__ = ("n", "out", "hub")

    def __init__(self, n: int, out: tuple[list[list[int]], list[list[int]]], hub: list[bool]):
        self.n = n
        self.out = out
        self.hub = hub


def _sub(G: _Di2, verts: list[int], extra_edges: list[tuple[int, int, int]] = (), add_hub: bool = False) -> _Di2:
    """Induced subgraph on ``verts`` (plus a hub at index len(verts) if asked).

    ``extra_edges`` use new ids, with -1 standing for the hub.
    """
    new = {v: i for i, v in enumerate(verts)}
    m = len(verts) + (1 if add_hub else 0)
    out: tuple[list[list[int]], list[list[int]]] = ([[] for _ in range(m)], [[] for _ in range(m)])
    for i in (0, 1):
        for v in verts:
            a = new[v]
            for w in G.out[i][v]:
                b = new.get(w)
                if b is not None:
                    out[i][a].append(b)
    h = len(verts)
    for mode, a, b in extra_edges:
        out[mode][h if a < 0 else a].append(h if b < 0 else b)
    for i in (0, 1):
        for a in range(m):
            out[i][a] = sorted(set(out[i][a]))
    hub = [G.hub[v] for v in verts] + ([True] if add_hub else [])
    return _Di2(m, out, hub)


def _bipartite_reach(cond: Condensation, Us: list[int], Ts: list[int], forward: bool) -> bool:
    """Does every SCC in ``Us`` reach every SCC in ``Ts`` (forward) or vice versa?

    Drops Us with an edge to another U and Ts entered from another T, then
    demands direct edges between every surviving pair.
    """
    Uset, Tset = set(Us), set(Ts)
    if forward:
        keepU = [u for u in Us if not (cond.succ[u] & (Uset - {u}))]
        entered = set()
        for t in Ts:
            entered |= cond.succ[t] & Tset
        keepT = [t for t in Ts if t not in entered]
        return all(t in cond.succ[u] for u in keepU for t in keepT)
    keepT = [t for t in Ts if not (cond.succ[t] & (Tset - {t}))]
    entered = set()
    for u in Us:
        entered |= cond.succ[u] & Uset
    keepU = [u for u in Us if u not in entered]
    return all(u in cond.succ[t] for t in keepT for u in keepU)


def _finite_rec(G: _Di2, depth: int, stats: dict) -> tuple[bool, str]:
    stats["nodes"] = stats.get("nodes", 0) + 1
    stats["max_depth"] = max(stats.get("max_depth", 0), depth)
    hubs = sum(G.hub)
    stats["max_hubs_at_depth"] = max(stats.get("max_hubs_at_depth", 0), hubs - 2 * depth)
    assert hubs <= 2 * depth, "hub growth exceeded two per level"
    n = G.n
    if hubs == n:
        # hubs only stand in for vertices already checked elsewhere
        return True, ""
    conds = [strongly_connected(n, G.out[i]) for i in (0, 1)]
    fin = [_finite_min_ecc_dag(c.size, [sorted(s) for s in c.succ]) for c in conds]
    for v in range(n):
        if not fin[0][conds[0].comp[v]] and not fin[1][conds[1].comp[v]]:
            return False, "an infinite SCC of mode 0 meets an infinite SCC of mode 1"

    # pick a finite SCC with both sides at most 7n/8 (hub-only SCCs excluded)
    best = None
    for p in (0, 1):
        c = conds[p]
        prefix = 0
        for cid in range(c.size):
            size = len(c.members[cid])
            if fin[p][cid] and not all(G.hub[v] for v in c.members[cid]):
                before, after = prefix, n - prefix - size
                key = (max(before, after) > 7 * n / 8, min(c.members[cid]), p)
                if best is None or key < best[0]:
                    best = (key, p, cid)
            prefix += size
    assert best is not None
    if best[0][0]:
        stats["unbalanced"] = stats.get("unbalanced", 0) + 1
    _, p, sid = best
    q = 1 - p
    cp, cq = conds[p], conds[q]
    S = set(cp.members[sid])
    A = [v for v in range(n) if cp.comp[v] < sid]
    B = [v for v in range(n) if cp.comp[v] > sid]

    Tids = sorted({cq.comp[v] for v in S})
    t1, tl = Tids[0], Tids[-1]
    for cid in range(t1 + 1, tl):
        if not all(v in S for v in cq.members[cid]):
            return False, "a mode-q SCC between the first and last SCC meeting S leaves S"
    T1 = set(cq.members[t1])
    Tl = set(cq.members[tl])
    for v in B:
        if not (cq.comp[v] < t1 or v in T1):
            return False, "a vertex ahead of S cannot reach S"
    for v in A:
        if not (cq.comp[v] > tl or v in Tl):
            return False, "S cannot reach a vertex behind it"

    children: list[_Di2] = []
    if B:
        inB = set(B)
        if fin[q][t1]:
            if T1 & inB:
                new = {v: i for i, v in enumerate(B)}
                extra = []
                for t in T1 & inB:
                    extra += [(q, -1, new[t]), (q, new[t], -1)]
                for u in B:
                    if any(w in T1 and w not in inB for w in G.out[q][u]):
                        extra.append((q, new[u], -1))
                extra += [(p, -1, new[b]) for b in B]
                children.append(_sub(G, B, extra, add_hub=True))
            else:
                children.append(_sub(G, B))
        else:
            if not T1 <= S:
                return False, "an infinite SCC meeting S is split by S"
            Us = sorted({cq.comp[v] for v in B})
            if not _bipartite_reach(cq, Us, Tids, forward=True):
                return False, "a vertex ahead of S cannot reach S"
            children.append(_sub(G, B))
    if A:
        inA = set(A)
        if fin[q][tl]:
            if Tl & inA:
                new = {v: i for i, v in enumerate(A)}
                extra = []
                for t in Tl & inA:
                    extra += [(q, -1, new[t]), (q, new[t], -1)]
                for u in Tl - inA:
                    for w in G.out[q][u]:
                        if w in inA:
                            extra.append((q, -1, new[w]))
                extra += [(p, new[a], -1) for a in A]
                children.append(_sub(G, A, extra, add_hub=True))
            else:
                children.append(_sub(G, A))
        else:
            if not Tl <= S:
                return False, "an infinite SCC meeting S is split by S"
            Us = sorted({cq.comp[v] for v in A})
            if not _bipartite_reach(cq, Us, Tids, forward=False):
                return False, "S cannot reach a vertex behind it"
            children.append(_sub(G, A))
    for child in children:
        ok, why = _finite_rec(child, depth + 1, stats)
        if not ok:
            return False, why
    return True, ""


def unreachable_pair(g: MultimodeGraph) -> tuple[int, int] | None:
    """Some (u, v) with no path from u to v in any mode, found by brute force."""
    for u in range(g.n):
        d = kmode_search(g, [u])
        for v in range(g.n):
            if d[v] >= INF:
                return u, v
    return None


def finite_2mode_diameter(g: MultimodeGraph, with_witness: bool = True) -> FinitenessVerdict:
    """Decide whether every vertex reaches every other vertex in some mode."""
    _require_directed(g, 2)
    out = (
        [sorted(set(a)) for a in _mode_out(g, 0)],
        [sorted(set(a)) for a in _mode_out(g, 1)],
    )
    stats: dict = {}
    ok, why = _finite_rec(_Di2(g.n, out, [False] * g.n), 0, stats)
    bound = 2 * math.log(g.n + 1, 8 / 7) + 16
    assert stats["max_depth"] <= bound, f"recursion depth {stats['max_depth']} above {bound:.1f}"
    verdict = FinitenessVerdict(ok, None, why, stats["max_depth"], stats["nodes"], stats)
    if not ok and with_witness:
        pair = unreachable_pair(g)
        if pair is None:
            raise AssertionError("infinite verdict without an unreachable pair")
        verdict.witness = pair
    return verdict
