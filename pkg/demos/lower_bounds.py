"""Hard-instance generators: an orthogonal-vectors answer shows up as a distance gap."""

from multimode import exact_parameters
from multimode.graph import fmt_dist
from multimode.instances import gen_lower_bound_instance, solve_hse, solve_ov

# 11 meets both 10 and 01; 10 and 01 are orthogonal
cases = {
    "no pair": ([[1, 1]], [[1, 0], [0, 1]]),
    "orthogonal pair": ([[1, 0], [1, 1]], [[0, 1]]),
}

for name, (A, B) in cases.items():
    print(f"{name}: OV={solve_ov(A, B)} HSE={solve_hse(A, B)}")
    for family in ("diam-2mode-undirected", "diam-3mode-dag", "radius-2mode-directed"):
        li = gen_lower_bound_instance(family, A, B)
        ex = exact_parameters(li.graph)
        value = ex.diameter if li.label.kind == "diameter" else ex.radius
        print(f"  {family:<24} n={li.graph.n:<3} label '{li.label}'  measured {fmt_dist(value)}  holds={li.label.holds(value)}")
