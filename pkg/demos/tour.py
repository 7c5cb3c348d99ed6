"""A short walk through k-mode distances and the undirected approximations."""

import numpy as np

from multimode import build_graph, exact_parameters, kmode_distance
from multimode.diameter import approx_diameter
from multimode.radius import binary_search_radius

# Two transit networks over the same six stops: a bus line 0-1-2-3-4-5 and
# a tram that runs 0-5-4-3-2-1.  A trip has to stay on one network.
bus = [(0, v, v + 1, 1) for v in range(5)]
tram = [(1, u, v, 1) for u, v in [(0, 5), (5, 4), (4, 3), (3, 2), (2, 1)]]
g = build_graph(6, 2, False, bus + tram)

print("d(0, 5) =", kmode_distance(g, 0, 5))  # one tram hop
print("d(1, 4) =", kmode_distance(g, 1, 4))  # three stops either way

ex = exact_parameters(g)
print("eccentricities", ex.ecc, "diameter", ex.diameter, "radius", ex.radius)

# The approximations all return a real pair, so the estimate never overshoots.
for algo in ("3approx", "2approx", "2.5approx"):
    est = approx_diameter(g, algo, seed=0)
    print(f"{algo:>9}: estimate {est.estimate} via ({est.a}, {est.b})")

r = binary_search_radius(g)
print("radius estimate", r.estimate, "center", r.center)

# a bigger random instance, where the gap to the exact value shows up
rng = np.random.default_rng(7)
n = 300
edges = []
for mode in range(2):
    perm = rng.permutation(n)
    edges += [(mode, int(perm[i]), int(perm[i + 1]), 1) for i in range(n - 1)]
    edges += [(mode, int(a), int(b), 1) for a, b in rng.integers(0, n, (60, 2)) if a != b]
big = build_graph(n, 2, False, edges)
print("random 300-vertex graph, exact diameter", exact_parameters(big).diameter)
for algo in ("3approx", "2approx"):
    print(f"  {algo}: {approx_diameter(big, algo, seed=1).estimate}")
