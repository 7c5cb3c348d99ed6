"""Directed questions: is every pair reachable in some mode, and how far apart are they?"""

import numpy as np

from multimode import build_graph
from multimode.directed import dag_2mode_finite_ecc, finite_2mode_diameter, two_mode_dag_diameter_2approx

# Red goes around a cycle, blue is empty: red alone connects everything.
cyc = build_graph(4, 2, True, [(0, v, (v + 1) % 4, 1) for v in range(4)])
print("cycle:", finite_2mode_diameter(cyc).finite)

# Two chains with the same direction cannot get back to the start.
same = build_graph(3, 2, True, [(0, 0, 1, 1), (0, 1, 2, 1), (1, 0, 1, 1), (1, 1, 2, 1)])
v = finite_2mode_diameter(same)
print("parallel chains:", v.finite, "witness", v.witness, "-", v.reason)

# Opposite chains are an aligned DAG pair; the diameter is finite.
opp = build_graph(5, 2, True, [(0, v, v + 1, 1) for v in range(4)] + [(1, v + 1, v, 1) for v in range(4)])
print("opposite chains: diameter ~", two_mode_dag_diameter_2approx(opp))
print("finite eccentricity at", sorted(dag_2mode_finite_ecc(opp)))

# random digraphs: sparse ones fail fast, denser ones need the recursion
rng = np.random.default_rng(3)
n = 200
for m in (900, 1400, 3000):
    edges = [(int(c), int(u), int(v), 1) for c, u, v in zip(rng.integers(0, 2, m), rng.integers(0, n, m), rng.integers(0, n, m)) if u != v]
    v = finite_2mode_diameter(build_graph(n, 2, True, edges))
    print(f"random digraph, {m} arcs:", v.finite, "depth", v.depth)
