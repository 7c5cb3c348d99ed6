import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.sparse.csgraph import csgraph_from_dense, shortest_path

from helpers import make, params, random_graph
from multimode.exact import (
    LeveledSamples,
    NegativeCycleError,
    NegTriInstance,
    kmode_apsp_bounded,
    kmode_apsp_trivial,
    min_plus_product,
    negtri_to_kmode,
    pick_W,
    random_negtri,
    reduce_to_standard_diameter,
    reduce_to_standard_radius,
    signed_apsp_reference,
    signed_graph,
)
from multimode.graph import INF, GraphError, build_graph, exact_apsp


def signed_oracle(n, k, edges):
    """k-mode APSP for signed weights through scipy's Johnson routine."""
    out = np.full((n, n), np.inf)
    for i in range(k):
        dense = np.full((n, n), np.inf)
        for m, u, v, w in edges:
            if m == i and u != v:
                dense[u, v] = min(dense[u, v], w)
        d = shortest_path(csgraph_from_dense(dense, null_value=np.inf), method="J", directed=True)
        np.minimum(out, d, out=out)
    res = np.full((n, n), INF, dtype=np.int64)
    fin = ~np.isinf(out)
    res[fin] = out[fin].astype(np.int64)
    return res


def random_signed_dag(rng, n, k, p=0.25, lo=-2, hi=2):
    edges = []
    for i in range(k):
        perm = rng.permutation(n)
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < p:
                    edges.append((i, int(perm[a]), int(perm[b]), int(rng.integers(lo, hi + 1))))
    return edges


# ---------------------------------------------------------------- reductions

def test_pick_W_is_smallest_even_above_nM():
    assert pick_W(build_graph(3, 1, False, [(0, 0, 1, 1)])) == 4
    assert pick_W(build_graph(3, 1, False, [(0, 0, 1, 3)])) == 10
    assert pick_W(build_graph(5, 1, False, [(0, 0, 1, 1)])) == 6


def test_diameter_reduction_path():
    g = build_graph(3, 1, False, [(0, 0, 1, 1), (0, 1, 2, 1)])
    red = reduce_to_standard_diameter(g)
    assert red.W == 4
    assert params(make(red.graph.n, 1, False, red.graph.all_edges())).diameter == 10
    assert red.recover(10) == 2


def test_diameter_reduction_disconnected_pair():
    g = build_graph(2, 2, False, [])
    red = reduce_to_standard_diameter(g)
    d = params(make(red.graph.n, 1, False, red.graph.all_edges())).diameter
    assert d == 3 * red.W and red.recover(d) == INF


def test_diameter_reduction_single_vertex():
    red = reduce_to_standard_diameter(build_graph(1, 2, False, []))
    d = params(make(red.graph.n, 1, False, red.graph.all_edges())).diameter
    # the copies of the lone vertex sit W/2 + W/2 apart, below 2W; recover clamps to 0
    assert d <= 2 * red.W and red.recover(d) == 0


def test_radius_reduction_examples():
    star = build_graph(4, 1, False, [(0, 0, v, 1) for v in (1, 2, 3)])
    red = reduce_to_standard_radius(star)
    assert params(make(red.graph.n, 1, False, red.graph.all_edges())).radius == 2 * red.W + 1
    n = 5
    two = build_graph(n, 2, False, [(1, u, v, 1) for u in range(n) for v in range(u + 1, n)] + [(0, 0, 1, 1)])
    red = reduce_to_standard_radius(two)
    assert params(make(red.graph.n, 1, False, red.graph.all_edges())).radius == 2 * red.W + 1
    red = reduce_to_standard_radius(build_graph(1, 1, False, []))
    assert params(make(red.graph.n, 1, False, red.graph.all_edges())).radius == 2 * red.W


def test_reduction_layout_and_size():
    g = build_graph(4, 3, True, [(0, 0, 1, 2), (2, 3, 2, 1)])
    red = reduce_to_standard_radius(g)
    assert red.graph.k == 1 and red.graph.n == 4 * 4 + 2
    assert red.copy_of(2, 3) == 4 + 8 + 3
    assert (red.hub_x, red.hub_y) == (16, 17)
    assert red.offset == 2 * red.W


def test_reductions_sweep():
    rng = np.random.default_rng(41)
    for _ in range(60):
        n = int(rng.integers(1, 14))
        k = int(rng.integers(1, 4))
        directed = bool(rng.random() < 0.5)
        case = random_graph(rng, n, k, float(rng.uniform(0, 0.4)), M=int(rng.integers(1, 4)),
                            connected=bool(rng.random() < 0.5), directed=directed)
        truth = params(case)
        for reduce, attr in ((reduce_to_standard_diameter, "diameter"), (reduce_to_standard_radius, "radius")):
            red = reduce(case.g)
            got = getattr(params(make(red.graph.n, 1, directed, red.graph.all_edges())), attr)
            want = getattr(truth, attr)
            if attr == "diameter" and n == 1:
                continue
            assert got == (3 * red.W if want == INF else 2 * red.W + want)
            assert red.recover(got) == want


# ---------------------------------------------------------------- APSP

def test_trivial_apsp_basics():
    case = random_graph(np.random.default_rng(2), 15, 3, 0.1, M=4)
    D = kmode_apsp_trivial(case.g)
    assert (np.diag(D) == 0).all()
    assert (D == D.T).all()
    assert (D == exact_apsp(case.g)).all()


def test_trivial_apsp_matches_scipy_on_digraphs():
    rng = np.random.default_rng(3)
    for _ in range(20):
        case = random_graph(rng, int(rng.integers(1, 20)), 2, 0.15, M=5, connected=False, directed=True)
        assert (kmode_apsp_trivial(case.g) == signed_oracle(case.n, case.k, case.edges)).all()


def test_min_plus_identity_and_infinite_row():
    rng = np.random.default_rng(4)
    A = rng.integers(-5, 6, (6, 6))
    A[2, :] = INF
    I = np.full((6, 6), INF, dtype=np.int64)
    np.fill_diagonal(I, 0)
    C = min_plus_product(A, I)
    assert (C == A).all()
    assert (C[2] == INF).all()


def naive_min_plus(A, B):
    C = np.full((A.shape[0], B.shape[1]), INF, dtype=np.int64)
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            for t in range(A.shape[1]):
                if A[i, t] < INF and B[t, j] < INF:
                    C[i, j] = min(C[i, j], A[i, t] + B[t, j])
    return C


def test_min_plus_matches_naive():
    rng = np.random.default_rng(5)
    for _ in range(10):
        A = rng.integers(-5, 6, (15, 15))
        B = rng.integers(-5, 6, (15, 15))
        A[rng.random((15, 15)) < 0.3] = INF
        B[rng.random((15, 15)) < 0.3] = INF
        assert (min_plus_product(A, B, block=4) == naive_min_plus(A, B)).all()


def test_min_plus_cap_drops_large_entries():
    A = np.array([[3, -1]])
    B = np.array([[1], [7]])
    assert min_plus_product(A, B)[0, 0] == 4
    assert min_plus_product(A, B, cap=5)[0, 0] == 4
    assert min_plus_product(A, B, cap=2)[0, 0] == INF


def test_min_plus_shape_errors():
    with pytest.raises(ValueError):
        min_plus_product(np.zeros((2, 3)), np.zeros((2, 3)))
    with pytest.raises(ValueError):
        min_plus_product(np.array([[1 << 58]]), np.array([[0]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_min_plus_associative(seed):
    rng = np.random.default_rng(seed)
    A, B, C = (rng.integers(-9, 10, (8, 8)) for _ in range(3))
    for X in (A, B, C):
        X[rng.random((8, 8)) < 0.2] = INF
    left = min_plus_product(min_plus_product(A, B), C)
    right = min_plus_product(A, min_plus_product(B, C))
    assert (left == right).all()


def test_bounded_apsp_path_unweighted():
    g = build_graph(12, 1, False, [(0, v, v + 1, 1) for v in range(11)])
    assert (kmode_apsp_bounded(g, np.random.default_rng(0)) == kmode_apsp_trivial(g)).all()


def test_bounded_apsp_single_negative_edge():
    sg = signed_graph(2, 1, [(0, 0, 1, -1)])
    got = kmode_apsp_bounded(sg, np.random.default_rng(0))
    assert got[0, 1] == -1 == signed_oracle(2, 1, [(0, 0, 1, -1)])[0, 1]
    assert got[1, 0] == INF


def test_bounded_apsp_random_dags():
    fails = 0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        n, k = int(rng.integers(2, 26)), int(rng.integers(1, 4))
        edges = random_signed_dag(rng, n, k)
        got = kmode_apsp_bounded(signed_graph(n, k, edges), rng)
        fails += not (got == signed_oracle(n, k, edges)).all()
    assert fails == 0


def test_reference_matches_scipy():
    rng = np.random.default_rng(6)
    for _ in range(20):
        n, k = int(rng.integers(1, 20)), int(rng.integers(1, 4))
        edges = random_signed_dag(rng, n, k, lo=-4, hi=4)
        assert (signed_apsp_reference(signed_graph(n, k, edges)) == signed_oracle(n, k, edges)).all()


def test_bounded_apsp_with_real_sampling_never_undercuts():
    # n large enough that the levels actually subsample
    rng = np.random.default_rng(7)
    n = 90
    edges = [(0, u, u + 1, int(rng.integers(-2, 3))) for u in range(n - 1)]
    edges += [(1, int(a), int(b), 2) for a, b in rng.integers(0, n, (40, 2)) if a < b]
    trace = LeveledSamples()
    got = kmode_apsp_bounded(signed_graph(n, 2, edges), rng, trace)
    ref = signed_oracle(n, 2, edges)
    assert (got >= ref).all()
    assert (got == ref).all()
    # nested samples with the stated sizes and hop bounds
    for i in range(1, len(trace.samples)):
        assert set(trace.samples[i]) <= set(trace.samples[i - 1])
        want = min(len(trace.samples[i - 1]), math.ceil(9 * n * math.log(n) / 1.5 ** i))
        assert len(trace.samples[i]) == max(1, want)
        assert trace.hops[i] == math.ceil(1.5 ** i)
    assert len(trace.samples[0]) == n
    assert len(trace.samples[-1]) < n


def test_bounded_apsp_negative_cycle():
    sg = signed_graph(3, 1, [(0, 0, 1, 1), (0, 1, 2, -3), (0, 2, 0, 1)])
    with pytest.raises(NegativeCycleError):
        kmode_apsp_bounded(sg, np.random.default_rng(0))


def test_signed_graph_validates():
    with pytest.raises(GraphError):
        signed_graph(2, 1, [(0, 0, 2, 1)])
    with pytest.raises(GraphError):
        signed_graph(2, 1, [(1, 0, 1, 1)])


# ---------------------------------------------------------------- negative triangle

def test_negtri_all_positive():
    n, M = 3, 2
    full = {(a, b): M for a in range(n) for b in range(n)}
    inst = NegTriInstance(n, M, dict(full), dict(full), dict(full))
    assert not inst.has_negative_triangle()
    for radius in (False, True):
        ng = negtri_to_kmode(inst, 8, radius)
        D = exact_apsp(ng.graph)
        assert all(D[ng.a(i), ng.d(i)] >= 30 * M for i in range(ng.block))
        if radius:
            assert params(make(ng.graph.n, ng.graph.k, False, ng.graph.all_edges())).radius >= 30 * M


def test_negtri_planted_triangle():
    n, M = 4, 3
    full = {(a, b): M for a in range(n) for b in range(n)}
    ij, jl, li = dict(full), dict(full), dict(full)
    ij[(1, 2)], jl[(2, 3)], li[(3, 1)] = -3, 1, 1
    inst = NegTriInstance(n, M, ij, jl, li)
    assert inst.has_negative_triangle()
    ng = negtri_to_kmode(inst, 1, radius_mode=True)
    assert ng.answer
    assert params(make(ng.graph.n, ng.graph.k, False, ng.graph.all_edges())).radius < 30 * M


def test_negtri_weights_in_band_and_predicate():
    rng = np.random.default_rng(8)
    for _ in range(40):
        n, M, k = int(rng.integers(1, 7)), int(rng.integers(1, 4)), int(rng.integers(1, 10))
        inst = random_negtri(n, M, rng, 0.7)
        ng = negtri_to_kmode(inst, k)
        assert all(9 * M <= w <= 11 * M for *_, w in ng.graph.all_edges())
        D = exact_apsp(ng.graph)
        assert ng.answer == any(D[ng.a(i), ng.d(i)] < 30 * M for i in range(ng.block))


def test_negtri_k8_two_groups():
    rng = np.random.default_rng(9)
    for _ in range(10):
        inst = random_negtri(6, 2, rng)
        ng = negtri_to_kmode(inst, 8)
        assert ng.groups == 2 and ng.block == 3
        D = exact_apsp(ng.graph)
        assert ng.answer == any(D[ng.a(i), ng.d(i)] < 30 * 2 for i in range(ng.block))


def test_negtri_rejects_out_of_band():
    with pytest.raises(GraphError):
        negtri_to_kmode(NegTriInstance(2, 1, {(0, 0): 5}, {}, {}), 1)
    with pytest.raises(GraphError):
        negtri_to_kmode(NegTriInstance(2, 1, {(0, 3): 1}, {}, {}), 1)
