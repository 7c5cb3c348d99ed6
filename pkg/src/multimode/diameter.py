"""Approximate diameter of undirected 2-mode and 3-mode graphs.

Decision procedures take a threshold ``D`` and either return a certified
``Witness`` pair or ``Below`` (the diameter is under ``D``).  All fractional
radii are exact ``Fraction`` values, so ball membership never rounds.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import numpy as np

from .graph import INF, GraphError, MultimodeGraph, kmode_distance, search
from .stdiam import st_diameter_2approx

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    a: int
    b: int
    d: int


@dataclass(frozen=True)
class Below:
    pass


DecisionOutcome = Union[Witness, Below]


class CertificationError(AssertionError):
    """A reported pair did not reproduce its distance."""


def certify(g: MultimodeGraph, a: int, b: int, d: int) -> Witness:
    actual = kmode_distance(g, a, b)
    if actual != d:
        raise CertificationError(f"pair ({a},{b}) reported {d}, recomputed {actual}")
    return Witness(a, b, d)


def _require(g: MultimodeGraph, k: int) -> None:
    if g.directed:
        raise GraphError("undirected graph required")
    if g.k != k:
        raise GraphError(f"{k}-mode graph required, got k={g.k}")


def _vmin(a: list[int], b: list[int]) -> list[int]:
    return [x if x <= y else y for x, y in zip(a, b)]


def _farthest(dist: list[int], cand=None) -> int:
    cand = range(len(dist)) if cand is None else cand
    best = -1
    for v in cand:
        if best < 0 or dist[v] > dist[best]:
            best = v
    return best


# ---------------------------------------------------------------- 3-approx

def three_approx_2mode(g: MultimodeGraph, start: int = 0) -> tuple[int, int, int]:
    """Linear-time estimate with D/3 <= estimate <= D.

    Splits V by whether ``start`` is closer in mode 0 or mode 1, then pairs
    the vertex of each side farthest from the other side.
    """
    _require(g, 2)
    if g.n == 0:
        raise GraphError("empty graph")
    z = start
    d1 = search(g, 0, [z])
    d2 = search(g, 1, [z])
    X = [v for v in range(g.n) if d1[v] < d2[v]]
    Y = [v for v in range(g.n) if d1[v] >= d2[v]]
    cands: list[tuple[int, int, int]] = []
    if X:
        v = _farthest(d1, X)
        cands.append((z, v, d1[v]))
    v = _farthest(d2, Y)
    cands.append((z, v, d2[v]))
    if X:
        from_X = search(g, 0, X)
        y = _farthest(from_X, Y)
        from_Y = search(g, 1, Y)
        x = _farthest(from_Y, X)
        cands.append((x, y, kmode_distance(g, x, y)))
    a, b, est = max(cands, key=lambda c: c[2])
    return a, b, est


# ---------------------------------------------------------------- bit matrices

class BoolMatrix:
    """Boolean matrix with rows packed into little-endian uint64 words."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        self.rows = rows
        self.cols = cols
        nw = (cols + 63) // 64
        if words is None:
            words = np.zeros((rows, nw), dtype=np.uint64)
        self.words = words

    @classmethod
    def from_dense(cls, dense) -> "BoolMatrix":
        arr = np.asarray(dense, dtype=bool)
        if arr.ndim != 2:
            raise ValueError("2-D array expected")
        r, c = arr.shape
        nw = (c + 63) // 64
        padded = np.zeros((r, nw * 64), dtype=bool)
        padded[:, :c] = arr
        packed = np.packbits(padded, axis=1, bitorder="little")
        words = np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(r, nw)
        return cls(r, c, words)

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls.from_dense(np.eye(n, dtype=bool))

    def to_dense(self) -> np.ndarray:
        if self.rows == 0 or self.cols == 0:
            return np.zeros((self.rows, self.cols), dtype=bool)
        as_bytes = np.ascontiguousarray(self.words.astype("<u8")).view(np.uint8)
        bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
        return bits[:, : self.cols].astype(bool)

    def set_row(self, i: int, members) -> None:
        row = np.zeros(self.words.shape[1] * 64, dtype=bool)
        row[list(members)] = True
        self.words[i] = np.packbits(row, bitorder="little").view("<u8")

    def get(self, i: int, j: int) -> bool:
        return bool((int(self.words[i, j >> 6]) >> (j & 63)) & 1)

    def row_members(self, i: int) -> list[int]:
        w = self.words[i].astype("<u8").view(np.uint8)
        return [int(j) for j in np.flatnonzero(np.unpackbits(w, bitorder="little")[: self.cols])]

    def popcount(self) -> int:
        return int(np.unpackbits(self.words.astype("<u8").view(np.uint8)).sum())

    def transpose(self) -> "BoolMatrix":
        return BoolMatrix.from_dense(self.to_dense().T)

    def __and__(self, other: "BoolMatrix") -> "BoolMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return BoolMatrix(self.rows, self.cols, self.words & other.words)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BoolMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and bool(np.array_equal(self.words, other.words))
        )


def bool_matmul(A: BoolMatrix, B: BoolMatrix) -> BoolMatrix:
    """C[i,j] = OR_k A[i,k] AND B[k,j]; row i of C is the OR of B's rows selected by A's row i."""
    if A.cols != B.rows:
        raise ValueError(f"inner dimensions differ: {A.cols} vs {B.rows}")
    C = BoolMatrix(A.rows, B.cols)
    if A.rows == 0 or B.cols == 0 or A.cols == 0:
        return C
    dense_a = A.to_dense()
    for i in range(A.rows):
        sel = np.flatnonzero(dense_a[i])
        if len(sel):
            C.words[i] = np.bitwise_or.reduce(B.words[sel], axis=0)
    return C


# ---------------------------------------------------------------- alpha subroutine

@dataclass(frozen=True)
class AlphaParams:
    alpha: Fraction
    D: int
    M: int

    def __post_init__(self):
        a = Fraction(self.alpha)
        object.__setattr__(self, "alpha", a)
        if not (Fraction(1, 3) < a <= Fraction(1, 2)):
            raise ValueError(f"alpha must lie in (1/3, 1/2], got {a}")

    @property
    def r_near(self) -> Fraction:
        return (1 - self.alpha) / 2 * self.D + Fraction(self.M, 2)

    @property
    def r_far(self) -> Fraction:
        return (1 + self.alpha) / 2 * self.D + Fraction(self.M, 2)

    @property
    def r_seed(self) -> Fraction:
        return (3 * self.alpha - 1) / 2 * self.D + Fraction(self.M, 2)

    @property
    def threshold(self) -> Fraction:
        return self.alpha * self.D - self.M


@dataclass
class AlphaTrace:
    """Intermediate sets and matrices of one ``sp_alpha_approx`` call."""

    X: list[int]
    Y: list[int]
    MX1: BoolMatrix
    MX2: BoolMatrix
    MY1: BoolMatrix
    MY2: BoolMatrix
    Z: BoolMatrix


def sp_alpha_approx(
    g: MultimodeGraph,
    z: int,
    params: AlphaParams,
    trace: list | None = None,
) -> DecisionOutcome:
    """Pair search around a seed whose small balls in both modes are enumerated.

    For every x near z in mode 0 and y near z in mode 1, Z[x, y] says that
    x's near mode-0 ball escapes y's far mode-1 ball and vice versa; any such
    (x, y) yields a pair at distance >= alpha * D.  With ``trace`` (a list),
    the intermediate sets and matrices are appended to it.
    """
    _require(g, 2)
    n = g.n
    r_near, r_far, r_seed = params.r_near, params.r_far, params.r_seed
    dz1 = search(g, 0, [z])
    dz2 = search(g, 1, [z])
    X = [v for v in range(n) if dz1[v] < r_seed]
    Y = [v for v in range(n) if dz2[v] < r_seed]
    limit = math.sqrt(n) if n else 0
    if len(X) > limit or len(Y) > limit:
        log.debug("alpha subroutine: |X|=%d |Y|=%d (n=%d)", len(X), len(Y), n)

    MX1 = BoolMatrix(len(X), n)
    MX2d = np.zeros((n, len(X)), dtype=bool)
    for j, x in enumerate(X):
        dx = search(g, 0, [x])
        MX1.set_row(j, [u for u in range(n) if dx[u] < r_near])
        MX2d[:, j] = [not (dx[u] < r_far) for u in range(n)]
    MY1 = BoolMatrix(len(Y), n)
    MY2d = np.zeros((n, len(Y)), dtype=bool)
    for j, y in enumerate(Y):
        dy = search(g, 1, [y])
        MY1.set_row(j, [u for u in range(n) if dy[u] < r_near])
        MY2d[:, j] = [not (dy[u] < r_far) for u in range(n)]
    MX2 = BoolMatrix.from_dense(MX2d)
    MY2 = BoolMatrix.from_dense(MY2d)

    P = bool_matmul(MX1, MY2)  # X x Y: X1 \ Y2 non-empty
    Q = bool_matmul(MY1, MX2)  # Y x X: Y1 \ X2 non-empty
    Z = P & Q.transpose()
    if trace is not None:
        trace.append(AlphaTrace(X, Y, MX1, MX2, MY1, MY2, Z))

    Zd = Z.to_dense()
    hits = np.argwhere(Zd)
    if len(hits) == 0:
        return Below()
    i, j = (int(t) for t in hits[0])
    x1 = set(MX1.row_members(i))
    x2_out = set(np.flatnonzero(MX2d[:, i]).tolist())
    y1 = set(MY1.row_members(j))
    y2_out = set(np.flatnonzero(MY2d[:, j]).tolist())
    a = min(x1 & y2_out)
    b = min(y1 & x2_out)
    d = kmode_distance(g, a, b)
    if d >= params.threshold:
        return Witness(a, b, d)
    return Below()


# ---------------------------------------------------------------- sampled decisions

def _sample(n: int, delta: float, rng: np.random.Generator, c: float = 2.0) -> list[int]:
    if n <= 1:
        return list(range(n))
    size = min(n, max(1, math.ceil(c * n ** (1 - delta) * math.log(n))))
    return sorted(int(v) for v in rng.choice(n, size=size, replace=False))


def _incidental(g: MultimodeGraph, x: int, dG: list[int], thr) -> Witness | None:
    v = _farthest(dG)
    if dG[v] >= thr:
        return certify(g, x, v, dG[v])
    return None


def two_approx_decision(
    g: MultimodeGraph,
    D: int,
    delta: float = 0.75,
    rng: np.random.Generator | None = None,
) -> DecisionOutcome:
    """Witness with d >= D/2 - M, or Below meaning D(G) < D with high probability."""
    _require(g, 2)
    rng = np.random.default_rng() if rng is None else rng
    n, M = g.n, g.M
    if n == 0:
        return Below()
    thr = Fraction(D, 2) - M
    cover_r = Fraction(D, 4) + Fraction(M, 2)
    far_r = Fraction(3 * D, 4) - Fraction(M, 2)
    covered = [False] * n
    for x in _sample(n, delta, rng):
        d = (search(g, 0, [x]), search(g, 1, [x]))
        w = _incidental(g, x, _vmin(*d), thr)
        if w:
            return w
        for i in (0, 1):
            for u in range(n):
                if d[i][u] < cover_r:
                    covered[u] = True
        for i in (0, 1):
            A = [u for u in range(n) if d[i][u] < cover_r]
            B = [u for u in range(n) if not d[i][u] < far_r]
            if not B:
                continue
            res = st_diameter_2approx(g, 1 - i, A, B, rng)
            dab = kmode_distance(g, res.a, res.b)
            if dab >= thr:
                return Witness(res.a, res.b, dab)
    if not all(covered):
        z = covered.index(False)
        dz = _vmin(search(g, 0, [z]), search(g, 1, [z]))
        w = _incidental(g, z, dz, thr)
        if w:
            return w
        out = sp_alpha_approx(g, z, AlphaParams(Fraction(1, 2), D, M))
        if isinstance(out, Witness) and out.d >= thr:
            return out
    return Below()


def two_half_approx_decision(
    g: MultimodeGraph,
    D: int,
    delta: float = 0.5,
    rng: np.random.Generator | None = None,
    band_at_half: bool = False,
) -> DecisionOutcome:
    """Witness with d >= 2D/5 - M, or Below meaning D(G) < D with high probability.

    The pivot y is picked at mode distance about 2D/5 from each sample;
    ``band_at_half`` moves that band to D/2.
    """
    _require(g, 2)
    rng = np.random.default_rng() if rng is None else rng
    n, M = g.n, g.M
    if n == 0:
        return Below()
    thr = Fraction(2 * D, 5) - M
    cover_r = Fraction(D, 10) + Fraction(M, 2)
    centre = Fraction(D, 2) if band_at_half else Fraction(2 * D, 5)
    lo, hi = centre - Fraction(M, 2), centre + Fraction(M, 2)
    covered = [False] * n
    for x in _sample(n, delta, rng):
        d = (search(g, 0, [x]), search(g, 1, [x]))
        w = _incidental(g, x, _vmin(*d), thr)
        if w:
            return w
        for i in (0, 1):
            for u in range(n):
                if d[i][u] < cover_r:
                    covered[u] = True
        for i in (0, 1):
            band = [u for u in range(n) if d[i][u] < INF and lo <= d[i][u] <= hi]
            if not band:
                continue
            y = band[0]
            dy = _vmin(search(g, 0, [y]), search(g, 1, [y]))
            w = _incidental(g, y, dy, thr)
            if w:
                return w
    if not all(covered):
        z = covered.index(False)
        dz = _vmin(search(g, 0, [z]), search(g, 1, [z]))
        w = _incidental(g, z, dz, thr)
        if w:
            return w
        out = sp_alpha_approx(g, z, AlphaParams(Fraction(2, 5), D, M))
        if isinstance(out, Witness) and out.d >= thr:
            return out
    return Below()


def three_mode_three_approx_decision(g: MultimodeGraph, D: int) -> DecisionOutcome:
    """Deterministic: Witness with d >= D/3, or Below meaning D(G) < D."""
    _require(g, 3)
    n = g.n
    if n == 0:
        return Below()
    r = Fraction(D, 3)
    p = 0
    dp = [search(g, i, [p]) for i in range(3)]
    w = _incidental(g, p, _vmin(_vmin(dp[0], dp[1]), dp[2]), r)
    if w:
        return w
    X = [v for v in range(n) if dp[0][v] < r]
    inX = set(X)
    Y = [v for v in range(n) if dp[1][v] < r and v not in inX]
    inY = set(Y)
    Z = [v for v in range(n) if v not in inX and v not in inY]
    # (first set, its mode), (second set, its mode), remaining mode
    for (P, cp), (Q, cq), ct in (
        ((X, 0), (Y, 1), 2),
        ((X, 0), (Z, 2), 1),
        ((Y, 1), (Z, 2), 0),
    ):
        if not P or not Q:
            continue
        from_P = search(g, cp, P)
        from_Q = search(g, cq, Q)
        near_P = {v for v in Q if from_P[v] < r}
        near_Q = {v for v in P if from_Q[v] < r}
        P1 = [v for v in P if v not in near_Q]
        Q1 = [v for v in Q if v not in near_P]
        if not P1 or not Q1:
            continue
        for anchor, other in ((P1[0], Q1), (Q1[0], P1)):
            da = search(g, ct, [anchor])
            v = _farthest(da, other)
            if da[v] >= r:
                dist = kmode_distance(g, anchor, v)
                if dist >= r:
                    return Witness(anchor, v, dist)
    return Below()


# ---------------------------------------------------------------- binary search

@dataclass(frozen=True)
class DiameterEstimate:
    estimate: int
    a: int
    b: int
    threshold: int  # largest D that produced a witness
    flagged: bool  # true when no threshold produced a witness
    calls: int


Decision = Callable[[MultimodeGraph, int], DecisionOutcome]


def binary_search_diameter(
    g: MultimodeGraph,
    decision: Decision,
    lo: int = 1,
    hi: int | None = None,
) -> DiameterEstimate:
    """Largest threshold in [lo, hi] with a witness; reports the best certified pair."""
    if hi is None:
        hi = max(lo, g.n * g.M)
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    calls = 0
    best: Witness | None = None

    def probe(D: int) -> bool:
        nonlocal calls, best
        calls += 1
        out = decision(g, D)
        if isinstance(out, Witness):
            certify(g, out.a, out.b, out.d)
            if best is None or out.d > best.d:
                best = out
            return True
        return False

    if not probe(lo):
        dist = _vmin(*[search(g, i, [0]) for i in range(g.k)]) if g.n else []
        if not dist:
            return DiameterEstimate(0, 0, 0, lo, True, calls)
        v = _farthest(dist)
        return DiameterEstimate(dist[v], 0, v, lo, True, calls)
    while lo < hi:
        if best is not None and best.d >= hi:
            lo = hi
            break
        # a certified pair at distance d means every threshold <= d is met
        if best is not None and best.d > lo:
            lo = min(best.d, hi)
            continue
        mid = (lo + hi + 1) // 2
        if probe(mid):
            lo = mid
        else:
            hi = mid - 1
    assert best is not None
    return DiameterEstimate(best.d, best.a, best.b, lo, False, calls)


def approx_diameter(
    g: MultimodeGraph,
    algo: str = "2approx",
    seed: int | None = None,
    delta: float | None = None,
    lo: int = 1,
    hi: int | None = None,
) -> DiameterEstimate:
    """Front door used by the CLI: ``algo`` in {3approx, 2approx, 2.5approx, 3mode}."""
    rng = np.random.default_rng(seed)
    if algo == "3approx":
        a, b, est = three_approx_2mode(g)
        return DiameterEstimate(est, a, b, est, False, 1)
    if algo == "2approx":
        dl = 0.75 if delta is None else delta
        return binary_search_diameter(g, lambda h, D: two_approx_decision(h, D, dl, rng), lo, hi)
    if algo == "2.5approx":
        dl = 0.5 if delta is None else delta
        return binary_search_diameter(g, lambda h, D: two_half_approx_decision(h, D, dl, rng), lo, hi)
    if algo == "3mode":
        return binary_search_diameter(g, three_mode_three_approx_decision, lo, hi)
    raise ValueError(f"unknown algorithm {algo!r}")
