"""k-mode radius within a factor of 3, by branching on the mode that reaches the center."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import INF, GraphError, MultimodeGraph, kmode_search, search


@dataclass
class RadiusStats:
    nodes: int = 0
    searches: int = 0

    @staticmethod
    def node_bound(k: int) -> float:
        return math.e * math.factorial(k)


@dataclass(frozen=True)
class RadiusEstimate:
    center: int | None
    estimate: int
    threshold: int | None  # smallest R accepted
    verdict: str
    stats: RadiusStats = field(default_factory=RadiusStats)


def radius_3approx_decision(
    g: MultimodeGraph,
    R: int,
    stats: RadiusStats | None = None,
) -> tuple[int, int] | None:
    """Return ``(center, ecc)`` with ecc <= 3R, or None when R(G) > R.

    Candidates shrink to vertices within mode-i distance R of a far vertex y
    (closed ball), for every mode i not yet used on the current branch.
    """
    if g.directed:
        raise GraphError("radius decision needs an undirected graph")
    if R < 0:
        raise ValueError("R must be nonnegative")
    stats = RadiusStats() if stats is None else stats
    if g.n == 0:
        return None
    lim = 3 * R

    def rec(used: frozenset, W: list[int]) -> tuple[int, int] | None:
        stats.nodes += 1
        x = W[0]
        dx = kmode_search(g, [x])
        stats.searches += g.k
        ecc = max(dx)
        if ecc <= lim:
            return x, ecc
        y = next(v for v in range(g.n) if dx[v] > lim)
        for i in range(g.k):
            if i in used:
                continue
            dy = search(g, i, [y])
            stats.searches += 1
            W2 = [w for w in W if dy[w] <= R]
            if not W2:
                continue
            found = rec(used | {i}, W2)
            if found is not None:
                return found
        return None

    return rec(frozenset(), list(range(g.n)))


def binary_search_radius(g: MultimodeGraph, lo: int = 0, hi: int | None = None) -> RadiusEstimate:
    """Smallest accepted threshold in [lo, hi]; the estimate is that center's exact eccentricity."""
    if hi is None:
        hi = max(lo, g.n * g.M)
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    stats = RadiusStats()
    if g.n == 0:
        return RadiusEstimate(None, INF, None, "empty graph", stats)
    top = radius_3approx_decision(g, hi, stats)
    if top is None:
        return RadiusEstimate(None, INF, None, "infinite: no vertex reaches every other vertex", stats)
    best, best_R = top, hi
    while lo < best_R:
        mid = (lo + best_R) // 2
        got = radius_3approx_decision(g, mid, stats)
        if got is None:
            lo = mid + 1
        else:
            best, best_R = got, mid
    center, ecc = best
    if max(kmode_search(g, [center])) != ecc:
        raise AssertionError("center eccentricity failed recertification")
    return RadiusEstimate(center, ecc, best_R, "finite", stats)
