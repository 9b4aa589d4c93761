"""Forbidden ordered patterns as a temporal CSP.

Pattern ``F<`` becomes a symbol of arity ``|F|``.  A graph's relation holds
every injective edge-preserving map ``F -> G`` (coordinate ``i`` is the
image of the ``i``-th vertex of ``F<``), and the template forbids repeats
and exactly those linear patterns that reproduce ``F<``.
"""

from __future__ import annotations

from typing import Sequence

from ..patterns import embeddings
from ..relcore import (
    Graph,
    OrderedGraph,
    RelStructure,
    Signature,
    TemporalStructure,
    linear_orders,
)


def pattern_signature(family: Sequence[OrderedGraph]) -> Signature:
    return Signature(tuple((f"F{i}", f.size) for i, f in enumerate(family)))


def reproducing_orders(f: OrderedGraph) -> list:
    """Linear rank patterns under which ``F`` is order-isomorphic to ``f``.

    These are exactly the automorphisms of the underlying graph, read as
    ``vertex i -> rank``.
    """
    c = f.canonical().graph
    out = []
    for ranks in linear_orders(c.size):
        perm = [r - 1 for r in ranks]
        if all(c.has_edge(perm[u], perm[v]) for u, v in c.edges):
            out.append(ranks)
    return out


def patterns_to_temporal(family: Sequence[OrderedGraph]) -> TemporalStructure:
    family = list(family)
    sig = pattern_signature(family)
    allowed = {}
    for (name, k), f in zip(sig, family):
        bad = set(reproducing_orders(f))
        allowed[name] = {p for p in linear_orders(k) if p not in bad}
    return TemporalStructure(sig, allowed)


def graph_to_temporal_instance(g: Graph, family: Sequence[OrderedGraph]) -> RelStructure:
    family = list(family)
    sig = pattern_signature(family)
    rels = {}
    for (name, k), f in zip(sig, family):
        c = f.canonical().graph
        ts = set()
        if k <= g.size:
            for emb in embeddings(c, g):
                ts.add(tuple(emb[i] for i in range(k)))
        rels[name] = ts
    return RelStructure(sig, g.size, rels)


def order_to_ranks(order: Sequence[int]) -> tuple:
    ranks = [0] * len(order)
    for i, v in enumerate(order):
        ranks[v] = i + 1
    return tuple(ranks)


def ranks_to_order(ranks: Sequence[int]) -> tuple:
    return tuple(sorted(range(len(ranks)), key=lambda v: (ranks[v], v)))
