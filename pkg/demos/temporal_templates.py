# A forbidden ordered pattern rewritten as a temporal CSP, then solved as a
# weak order and linearized.

from ordpat import Graph, OrderedGraph, linearize_witness, solve_ordering, temporal_hom_exists
from ordpat.reductions import graph_to_temporal_instance, patterns_to_temporal, ranks_to_order

f = OrderedGraph(Graph(4, frozenset({(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)})))
t = patterns_to_temporal([f])
print("allowed patterns:", len(t.allowed["F0"]), "of 24 linear orders")

for g in (f.graph, Graph.complete(4)):
    inst = graph_to_temporal_instance(g, [f])
    w = temporal_hom_exists(inst, t)
    print(f"{len(g.edges)} edges: {inst.tuple_count} tuples, weak order {w}")
    if w is not None:
        lin = linearize_witness(inst, t, w)
        print("  linear:", lin, "-> vertex order", ranks_to_order(lin))
    print("  direct solver:", solve_ordering(g, [f]))
