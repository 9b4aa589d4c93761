# Ordering a graph so that a pattern never shows up, and coloring it so that
# no monochromatic triangle does.

import itertools

from ordpat import ColoredGraph, Graph, OrderedGraph, solve_coloring, solve_ordering
from ordpat.reductions import minimal_clique, ordering_family, star

# A monotone path on k+1 vertices is avoidable exactly when the graph is
# k-colorable.  The 5-cycle needs three colors:

c5 = Graph(5, frozenset({(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}))
for k in (2, 3):
    order = solve_ordering(c5, [OrderedGraph(Graph.path(k + 1))])
    print(f"k={k}: order {order}")

# Two colors, no monochromatic triangle.

pal = ("r", "b")
mono = [ColoredGraph(Graph.complete(3), (c,) * 3, pal) for c in pal]
for n in (4, 5, 6):
    print(f"K{n}:", solve_coloring(Graph.complete(n), pal, mono))

# The same question as an ordering problem.  m is the smallest clique that
# cannot be colored; star(h) pads h with a K_m.

m = minimal_clique(pal, mono)
fam = ordering_family(pal, mono, m)
print(f"m = {m}, ordering family of {len(fam)} patterns")
for n in (4, 5):
    h = Graph(n, frozenset(itertools.combinations(range(n), 2)))
    print(f"K{n}: coloring {solve_coloring(h, pal, mono) is not None}, ordering {solve_ordering(star(h, 2, m), fam) is not None}")
