"""Lower-bound constructions as labeled fixtures.

Each family turns two lists of boolean vectors into a multimode graph whose
diameter or radius is pinned down by the orthogonal-vectors (OV) or
hitting-set-existence (HSE) answer.  The answer comes from brute force, so
every label is derived rather than assumed.

Vertex layout shared by the OV-style families: A first, then B, then one
vertex per coordinate (U), then any extra hubs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import INF, MultimodeGraph, build_graph, fmt_dist


@dataclass(frozen=True)
class OvInstance:
    A: np.ndarray  # |A| x d, entries 0/1
    B: np.ndarray

    @property
    def d(self) -> int:
        return int(self.A.shape[1])


def ov_instance(A, B) -> OvInstance:
    A_ = np.asarray(A, dtype=np.uint8)
    B_ = np.asarray(B, dtype=np.uint8)
    if A_.ndim != 2 or B_.ndim != 2:
        raise ValueError("vector lists must be 2-d")
    if len(A_) == 0 or len(B_) == 0:
        raise ValueError("vector lists must be non-empty")
    if A_.shape[1] != B_.shape[1] or A_.shape[1] < 1:
        raise ValueError("vectors need a shared dimension d >= 1")
    if ((A_ > 1).any()) or ((B_ > 1).any()):
        raise ValueError("vector entries must be 0 or 1")
    return OvInstance(A_, B_)


def random_ov(n_a: int, n_b: int, d: int, p: float, rng: np.random.Generator) -> OvInstance:
    A = (rng.random((n_a, d)) < p).astype(np.uint8)
    B = (rng.random((n_b, d)) < p).astype(np.uint8)
    return OvInstance(A, B)


def _dot(a, b) -> int:
    return sum(int(x) * int(y) for x, y in zip(a, b))


def solve_ov(A, B) -> bool:
    """True when some a in A and b in B are orthogonal."""
    return any(_dot(a, b) == 0 for a in A for b in B)


def solve_hse(A, B) -> bool:
    """True when some a in A meets every b in B."""
    return any(all(_dot(a, b) != 0 for b in B) for a in A)


def _gov_edges(inst: OvInstance) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """(a, u) and (u, b) index pairs of the OV bipartite graph, in global ids."""
    na, nb = len(inst.A), len(inst.B)
    u0 = na + nb
    au = [(a, u0 + i) for a in range(na) for i in range(inst.d) if inst.A[a, i]]
    ub = [(u0 + i, na + b) for b in range(nb) for i in range(inst.d) if inst.B[b, i]]
    return au, ub


def build_gov(A, B) -> MultimodeGraph:
    """Single-mode undirected graph on A, B and the coordinates; v -- i when v[i] = 1."""
    inst = ov_instance(A, B)
    au, ub = _gov_edges(inst)
    n = len(inst.A) + len(inst.B) + inst.d
    return build_graph(n, 1, False, [(0, u, v, 1) for u, v in au + ub])


# ---------------------------------------------------------------------------
# DAG gadget


@dataclass(frozen=True)
class DagGadget:
    """DAG whose local ids are already a topological order.

    ``embedded[i]`` is the local id of the i-th input item; the rest are
    hubs.  Every pair x < y is joined by a path of at most two edges.
    """

    size: int
    edges: tuple  # (u, v) with u < v
    embedded: tuple
    hubs: tuple


def dag_gadget(items: Sequence, steiner: bool = True) -> DagGadget:
    """Two-hop reachability gadget over an ordered list, by midpoint recursion.

    With ``steiner`` a fresh hub sits between the two halves, fed by every
    vertex on its left and feeding every vertex on its right; embedded items
    are then never adjacent to each other.  Without it the middle item plays
    the hub, so there are no extra vertices and no item has an edge into a
    hub.  Both use O(n log n) edges.
    """
    count = len(items)
    if count < 1:
        raise ValueError("gadget needs at least one item")
    edges: list[tuple[int, int]] = []
    embedded: list[int] = [0] * count
    hubs: list[int] = []
    pos = 0

    def place(i: int) -> int:
        nonlocal pos
        embedded[i] = pos
        pos += 1
        return embedded[i]

    def build(lo: int, hi: int) -> list[int]:
        nonlocal pos
        if hi - lo == 0:
            return []
        if hi - lo == 1:
            return [place(lo)]
        mid = (lo + hi) // 2
        if steiner:
            left = build(lo, mid)
            hub = pos
            pos += 1
            hubs.append(hub)
            right = build(mid, hi)
        else:
            left = build(lo, mid)
            hub = place(mid)
            right = build(mid + 1, hi)
        edges.extend((v, hub) for v in left)
        edges.extend((hub, v) for v in right)
        return left + [hub] + right

    build(0, count)
    return DagGadget(pos, tuple(sorted(edges)), tuple(embedded), tuple(sorted(hubs)))


# ---------------------------------------------------------------------------
# labeled instances


@dataclass(frozen=True)
class Label:
    kind: str  # "diameter" or "radius"
    relation: str  # "=", ">=", "<="
    value: int  # INF for infinite

    def holds(self, measured: int) -> bool:
        if self.relation == "=":
            return measured == self.value
        if self.relation == ">=":
            return measured >= self.value
        if self.relation == "<=":
            return measured <= self.value
        raise ValueError(f"unknown relation {self.relation!r}")

    def __str__(self) -> str:
        return f"{self.kind} {self.relation} {fmt_dist(self.value)}"


@dataclass(frozen=True)
class LabeledInstance:
    graph: MultimodeGraph
    family: str
    label: Label
    answer: bool  # OV answer for diameter families, HSE answer for radius families
    problem: str  # "ov" or "hse"
    parts: dict = field(default_factory=dict)  # named vertex groups


class _Builder:
    def __init__(self, k: int, directed: bool):
        self.k = k
        self.directed = directed
        self.n = 0
        self.edges: list[tuple[int, int, int, int]] = []
        self.parts: dict[str, list[int]] = {}

    def block(self, name: str, size: int) -> list[int]:
        ids = list(range(self.n, self.n + size))
        self.n += size
        self.parts[name] = ids
        return ids

    def add(self, mode: int, u: int, v: int) -> None:
        self.edges.append((mode, u, v, 1))

    def connect(self, mode: int, src: Sequence[int], dst: Sequence[int]) -> None:
        for u in src:
            for v in dst:
                if u != v:
                    self.add(mode, u, v)

    def gadget(self, name: str, members: list[int], steiner: bool = True) -> tuple[list[int], list[tuple[int, int]]]:
        """Embed a gadget over existing vertices; returns (all gadget ids in order, edges)."""
        gd = dag_gadget(members, steiner)
        hub_ids = self.block(name + "_hubs", len(gd.hubs))
        local = {}
        for i, loc in enumerate(gd.embedded):
            local[loc] = members[i]
        for j, loc in enumerate(gd.hubs):
            local[loc] = hub_ids[j]
        order = [local[i] for i in range(gd.size)]
        return order, [(local[u], local[v]) for u, v in gd.edges]

    def graph(self) -> MultimodeGraph:
        return build_graph(self.n, self.k, self.directed, self.edges)


def _ov_blocks(b: _Builder, inst: OvInstance) -> tuple[list[int], list[int], list[int]]:
    A = b.block("A", len(inst.A))
    B = b.block("B", len(inst.B))
    U = b.block("U", inst.d)
    return A, B, U


def _diam_2mode_undirected(inst: OvInstance) -> _Builder:
    b = _Builder(2, False)
    A, B, U = _ov_blocks(b, inst)
    x, y = b.block("x", 1)[0], b.block("y", 1)[0]
    au, ub = _gov_edges(inst)
    for u, v in au + ub:
        b.add(0, u, v)
    b.connect(0, [y], A)
    b.connect(0, [x], B)
    b.connect(1, [x], A + U)
    b.connect(1, [y], U + B)
    return b


def _diam_3mode_dag(inst: OvInstance) -> _Builder:
    b = _Builder(3, True)
    A, B, U = _ov_blocks(b, inst)
    # members-only gadgets: a hub of B's gadget would give a reversed-edge
    # path from A into B in the third mode
    A_hat, EA = b.gadget("A", A, steiner=False)
    B_hat, EB = b.gadget("B", B, steiner=False)
    U_hat, EU = b.gadget("U", U, steiner=False)
    x = b.block("x", 1)[0]
    in_A, in_B = set(A), set(B)
    au, ub = _gov_edges(inst)
    for u, v in au + ub:
        b.add(0, u, v)
    b.connect(0, [v for v in A_hat if v not in in_A], [x])
    b.connect(0, [x], B_hat)
    for u, v in EA + EB + EU:
        b.add(1, u, v)
        b.add(2, v, u)
    b.connect(1, A_hat + B_hat, U_hat)
    b.connect(1, B_hat, [x])
    b.connect(1, [x], A_hat)
    b.connect(2, U_hat, A_hat + B_hat)
    b.connect(2, A_hat, [x])
    b.connect(2, A_hat, [v for v in B_hat if v not in in_B])
    return b


def _diam_logmode(inst: OvInstance) -> _Builder:
    d = inst.d
    b = _Builder(d + 2, False)
    A, B, U = _ov_blocks(b, inst)
    au, ub = _gov_edges(inst)
    for a, u in au:
        b.add(U.index(u), a, u)
    for u, v in ub:
        b.add(U.index(u), u, v)
    b.connect(d, A, U)
    b.connect(d + 1, U, B)
    return b


def _stdiam_l2(inst: OvInstance) -> _Builder:
    b = _Builder(3, False)
    A, B, U = _ov_blocks(b, inst)
    x = b.block("x", 1)[0]
    au, ub = _gov_edges(inst)
    for u, v in au + ub:
        b.add(0, u, v)
    b.connect(1, [x], A + U)  # everything outside T = B
    b.connect(2, [x], U + B)  # everything outside S = A
    return b


def _radius_2mode_directed(inst: OvInstance) -> _Builder:
    b = _Builder(2, True)
    A, B, U = _ov_blocks(b, inst)
    x = b.block("x", 1)[0]
    au, ub = _gov_edges(inst)
    for u, v in au + ub:
        b.add(0, u, v)
    b.connect(1, A, U + [x])
    b.connect(1, [x], A)
    return b


def _two_gadgets(b: _Builder, A: list[int]) -> list[tuple[int, int]]:
    _, E1 = b.gadget("A", A)
    _, E2 = b.gadget("A2", A)
    return E1 + E2


def _radius_3mode_dag(inst: OvInstance) -> _Builder:
    b = _Builder(3, True)
    A, B, U = _ov_blocks(b, inst)
    EA = _two_gadgets(b, A)
    au, ub = _gov_edges(inst)
    for u, v in au + ub:
        b.add(0, u, v)
    for u, v in EA:
        b.add(1, u, v)
        b.add(2, v, u)
    b.connect(1, A, U)
    return b


def _radius_2mode_dag(inst: OvInstance) -> _Builder:
    b = _Builder(2, True)
    A, B, U = _ov_blocks(b, inst)
    EA = _two_gadgets(b, A)
    au, ub = _gov_edges(inst)
    for u, v in au + ub:
        b.add(0, u, v)
    for u, v in EA:
        b.add(0, u, v)
        b.add(1, v, u)
    b.connect(1, A, U)
    return b


def _radius_2mode_undirected(inst: OvInstance) -> _Builder:
    b = _Builder(2, False)
    A, B, U = _ov_blocks(b, inst)
    au, ub = _gov_edges(inst)
    for u, v in au + ub:
        b.add(0, u, v)
    b.connect(1, A, U)
    return b


def _radius_logmode(inst: OvInstance) -> _Builder:
    d = inst.d
    b = _Builder(d + 2, False)
    A, B, U = _ov_blocks(b, inst)
    x = b.block("x", 1)[0]
    au, ub = _gov_edges(inst)
    for a, u in au:
        b.add(U.index(u), a, u)
    for u, v in ub:
        b.add(U.index(u), u, v)
    b.connect(d, A, U)
    b.connect(d + 1, A, [x])
    return b


# family -> (builder, problem, label when the answer is YES, label when NO)
FAMILIES = {
    "diam-2mode-undirected": (_diam_2mode_undirected, "ov", ("diameter", ">=", 4), ("diameter", "=", 2)),
    "diam-3mode-dag": (_diam_3mode_dag, "ov", ("diameter", "=", INF), ("diameter", "=", 2)),
    "diam-logmode": (_diam_logmode, "ov", ("diameter", "=", INF), ("diameter", "=", 2)),
    "stdiam-l2": (_stdiam_l2, "ov", ("diameter", ">=", 4), ("diameter", "=", 2)),
    "radius-2mode-directed": (_radius_2mode_directed, "hse", ("radius", "<=", 2), ("radius", "=", INF)),
    "radius-3mode-dag": (_radius_3mode_dag, "hse", ("radius", "<=", 2), ("radius", "=", INF)),
    "radius-2mode-dag": (_radius_2mode_dag, "hse", ("radius", "<=", 2), ("radius", ">=", 4)),
    "radius-2mode-undirected": (_radius_2mode_undirected, "hse", ("radius", "<=", 2), ("radius", ">=", 4)),
    "radius-logmode": (_radius_logmode, "hse", ("radius", "<=", 2), ("radius", "=", INF)),
}


def gen_lower_bound_instance(family: str, A, B) -> LabeledInstance:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    inst = ov_instance(A, B)
    make, problem, yes, no = FAMILIES[family]
    answer = solve_ov(inst.A, inst.B) if problem == "ov" else solve_hse(inst.A, inst.B)
    b = make(inst)
    label = Label(*(yes if answer else no))
    return LabeledInstance(b.graph(), family, label, answer, problem, dict(b.parts))
