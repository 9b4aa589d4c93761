"""Coloring problems turned into ordering problems.

``star(G)`` adds ``|C| - 1`` disjoint copies of a complete graph ``K_m``
that no good coloring admits.  In an ordering avoiding the family below,
those copies are intervals that cut the order into ``|C|`` color classes.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from ..patterns import solve_coloring
from ..relcore import ColoredGraph, Graph, OrderedGraph, Verdict, disjoint_union


def minimal_clique(palette: Sequence, family: Sequence[ColoredGraph], cap: int = 12) -> int:
    """Least ``m`` such that ``K_m`` has no good coloring."""
    for m in range(1, cap + 1):
        if solve_coloring(Graph.complete(m), palette, family) is None:
            return m
    raise ValueError(f"every complete graph up to K_{cap} is colorable; no clique separator")


def _ordered(g: Graph, order: Sequence[int]) -> OrderedGraph:
    return OrderedGraph(g, tuple(order)).canonical()


def _dedupe(graphs) -> list:
    seen = {}
    for h in graphs:
        seen.setdefault(h.key(), h)
    return [seen[k] for k in sorted(seen)]


def ordering_family_parts(palette: Sequence, family: Sequence[ColoredGraph], m: int) -> dict:
    """The four groups of forbidden ordered graphs, keyed 1..4."""
    c = len(palette)
    K = Graph.complete(m)
    parts = {}

    # (1) K_m plus a vertex adjacent to one clique vertex, in every order
    one = []
    for j in range(m):
        g = Graph(m + 1, K.edges | {(j, m)})
        for p in range(m + 1):
            order = list(range(m))
            order.insert(p, m)
            one.append(_ordered(g, order))
    parts[1] = _dedupe(one)

    # (2) K_m plus an isolated vertex that is neither first nor last
    two = []
    g = Graph(m + 1, K.edges)
    for p in range(1, m):
        order = list(range(m))
        order.insert(p, m)
        two.append(_ordered(g, order))
    parts[2] = _dedupe(two)

    # (3) |C| disjoint copies of K_m, each an interval
    parts[3] = [OrderedGraph(disjoint_union(*[K] * c))]

    # (4) F plus |C|-1 copies of K_m; color class i sits between copies i-1 and i
    four = []
    for f in family:
        for total in f.expand():
            four.extend(_starred_orders(total, palette, m))
    parts[4] = _dedupe(four)
    return parts


def _starred_orders(f: ColoredGraph, palette: Sequence, m: int):
    c = len(palette)
    g = star(f.graph, c, m)
    classes = [[v for v in range(f.size) if f.colors[v] == col] for col in palette]
    cliques = [list(range(f.size + i * m, f.size + (i + 1) * m)) for i in range(c - 1)]
    for perms in itertools.product(*(itertools.permutations(cl) for cl in classes)):
        order = []
        for i, block in enumerate(perms):
            order.extend(block)
            if i < c - 1:
                order.extend(cliques[i])
        yield _ordered(g, order)


def ordering_family(palette: Sequence, family: Sequence[ColoredGraph], m: int) -> list:
    parts = ordering_family_parts(palette, family, m)
    return [h for i in (1, 2, 3, 4) for h in parts[i]]


def star(g: Graph, c: int, m: int) -> Graph:
    """``g`` plus ``c - 1`` disjoint copies of ``K_m`` (numbered after ``g``)."""
    return disjoint_union(g, *[Graph.complete(m)] * (c - 1))


def cliques(g: Graph, m: int) -> list:
    """All vertex sets of ``m``-cliques, sorted."""
    out = []

    def rec(clique, cands):
        if len(clique) == m:
            out.append(tuple(clique))
            return
        for v in sorted(cands):
            if not clique or v > clique[-1]:
                rec(clique + [v], cands & g.adj[v])

    rec([], set(range(g.size)))
    return out


def unstar(g: Graph, c: int, m: int):
    """Undo ``star``, or decide the ordering instance outright.

    Returns ``Verdict.NO`` if a ``K_m`` copy has an edge leaving it or there
    are at least ``c`` disjoint copies, ``Verdict.YES`` if there are fewer
    than ``c - 1`` copies, and otherwise ``g`` with the ``c - 1`` copies
    removed.
    """
    ks = cliques(g, m)
    for k in ks:
        inside = set(k)
        if any(g.adj[v] - inside for v in k):
            return Verdict.NO
    # every copy is now a whole component, so copies are disjoint
    if len(ks) >= c:
        return Verdict.NO
    if len(ks) < c - 1:
        return Verdict.YES
    drop = {v for k in ks for v in k}
    keep = [v for v in range(g.size) if v not in drop]
    return g.induced(keep)
