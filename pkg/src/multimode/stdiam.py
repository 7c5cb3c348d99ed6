"""ST-diameter on a single mode: exact, 3-approximate and 2-approximate.

The ST-diameter of sets S, T is the largest distance d(s, t) over s in S,
t in T.  Every result carries a real S x T pair, so the estimate never
exceeds the true value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import INF, GraphError, MultimodeGraph, search


@dataclass(frozen=True)
class StDiameterResult:
    a: int
    b: int
    estimate: int
    searches: int = 0


def _prep(g: MultimodeGraph, S: Iterable[int], T: Iterable[int]) -> tuple[list[int], list[int]]:
    S_ = sorted(set(int(s) for s in S))
    T_ = sorted(set(int(t) for t in T))
    if not S_ or not T_:
        raise GraphError("ST-diameter needs non-empty S and T")
    return S_, T_


def _argmax(dist: list[int], cand: list[int]) -> int:
    # cand is sorted, so the first maximum is the lowest id
    best = cand[0]
    for v in cand:
        if dist[v] > dist[best]:
            best = v
    return best


def st_diameter_exact(g: MultimodeGraph, mode: int, S: Iterable[int], T: Iterable[int]) -> StDiameterResult:
    S_, T_ = _prep(g, S, T)
    best = None
    for s in S_:
        d = search(g, mode, [s])
        t = _argmax(d, T_)
        if best is None or d[t] > best[2]:
            best = (s, t, d[t])
    return StDiameterResult(*best, searches=len(S_))


def st_diameter_3approx(g: MultimodeGraph, mode: int, S: Iterable[int], T: Iterable[int]) -> StDiameterResult:
    """Two-sweep estimate: from the lowest s to its farthest t, then back into S."""
    S_, T_ = _prep(g, S, T)
    s = S_[0]
    ds = search(g, mode, [s])
    t1 = _argmax(ds, T_)
    dt = search(g, mode, [t1])
    s1 = _argmax(dt, S_)
    if dt[s1] > ds[t1]:
        return StDiameterResult(s1, t1, dt[s1], searches=2)
    return StDiameterResult(s, t1, ds[t1], searches=2)


def st_diameter_2approx(
    g: MultimodeGraph,
    mode: int,
    S: Iterable[int],
    T: Iterable[int],
    rng: np.random.Generator,
) -> StDiameterResult:
    """Sampling estimate with d(a, b) >= D_ST / 2 with high probability.

    Searches from a random sample of about sqrt(n) ln n vertices, from the
    S-vertex farthest from the sample and from its sqrt(n) nearest
    vertices, plus the two-sweep pairs.  Every searched vertex is paired
    with its farthest vertex on the opposite side.
    """
    S_, T_ = _prep(g, S, T)
    n = g.n
    in_S = set(S_)
    in_T = set(T_)
    sweep = st_diameter_3approx(g, mode, S_, T_)
    best = (sweep.a, sweep.b, sweep.estimate)
    searches = sweep.searches

    def consider(u: int, d: list[int]) -> None:
        nonlocal best
        if u in in_S:
            t = _argmax(d, T_)
            if d[t] > best[2]:
                best = (u, t, d[t])
        if u in in_T and not g.directed:
            s = _argmax(d, S_)
            if d[s] > best[2]:
                best = (s, u, d[s])

    if len(S_) == 1:
        d = search(g, mode, S_)
        consider(S_[0], d)
        return StDiameterResult(*best, searches=searches + 1)

    size = min(n, math.ceil(math.sqrt(n) * math.log(max(n, 2))))
    sample = sorted(int(x) for x in rng.choice(n, size=size, replace=False))
    for w in sample:
        consider(w, search(g, mode, [w]))
    searches += len(sample)

    to_sample = search(g, mode, sample)
    s_far = _argmax(to_sample, S_)
    d_far = search(g, mode, [s_far])
    consider(s_far, d_far)
    searches += 1
    near_count = min(n, math.ceil(math.sqrt(n)))
    near = sorted(range(n), key=lambda v: (d_far[v], v))[:near_count]
    for u in near:
        if u != s_far and d_far[u] < INF:
            consider(u, search(g, mode, [u]))
            searches += 1
    return StDiameterResult(*best, searches=searches)
