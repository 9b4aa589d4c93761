"""Exact solvers for forbidden ordered / colored subgraph problems."""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .relcore import (
    ANY,
    BudgetExceeded,
    ColoredGraph,
    Graph,
    InvariantError,
    OrderedGraph,
)


class _Pattern:
    """An ordered pattern relabelled by position: vertex ``i`` is the ``i``-th."""

    __slots__ = ("k", "adj", "earlier")

    def __init__(self, f: OrderedGraph):
        c = f.canonical()
        self.k = c.size
        self.adj = [set(a) for a in c.graph.adj]
        # for vertex i: (j, adjacent?) for every j < i
        self.earlier = [[(j, j in self.adj[i]) for j in range(i)] for i in range(self.k)]


def _ordered_match(pat: _Pattern, seq: Sequence[int], adj, induced: bool, last=None) -> bool:
    """Does ``pat`` occur order-preservingly in the vertex sequence ``seq``?

    With ``last`` given, pattern vertex ``k-1`` must go to position ``last``
    and the others strictly before it.
    """
    k = pat.k
    n = len(seq) if last is None else last + 1
    if k > n:
        return False
    image = [0] * k

    def fits(i, p):
        v = seq[p]
        av = adj[v]
        for j, is_edge in pat.earlier[i]:
            linked = seq[image[j]] in av
            if is_edge and not linked:
                return False
            if induced and not is_edge and linked:
                return False
        return True

    # pattern vertex i may use positions lo..top(i)
    if last is None:
        top = lambda i: n - k + i
    else:
        top = lambda i: last - (k - 1) + i

    def rec(i, lo):
        if i == k:
            return True
        if last is not None and i == k - 1:
            if fits(i, last):
                image[i] = last
                return True
            return False
        for p in range(lo, top(i) + 1):
            if fits(i, p):
                image[i] = p
                if rec(i + 1, p + 1):
                    return True
        return False

    return rec(0, 0)


def ordered_occurs(g: OrderedGraph, f: OrderedGraph, induced: bool = False) -> bool:
    """Is ``f`` an ordered (induced, if asked) subgraph of ``g``?"""
    return _ordered_match(_Pattern(f), g.order, g.graph.adj, induced)


def twin_pairs(g: Graph) -> list:
    """Pairs ``u < v`` with ``N(u) - {v} == N(v) - {u}``; swapping them is an automorphism."""
    adj = g.adj
    return [
        (u, v)
        for u, v in itertools.combinations(range(g.size), 2)
        if adj[u] - {v} == adj[v] - {u}
    ]


def solve_ordering(
    g: Graph,
    family: Iterable[OrderedGraph],
    induced: bool = False,
    budget: Optional[int] = None,
) -> Optional[tuple]:
    """A vertex order of ``g`` avoiding every pattern, or ``None``.

    Vertices are placed left to right; after each placement only occurrences
    ending at the new vertex are checked.  Twins are kept in index order,
    which loses nothing: the lexicographically first solution already has
    that property.
    """
    pats = [_Pattern(f) for f in family]
    n = g.size
    adj = g.adj
    must_follow = [set() for _ in range(n)]  # v may be placed only after these
    for u, v in twin_pairs(g):
        must_follow[v].add(u)
    seq = []
    placed = [False] * n
    nodes = 0

    def rec():
        nonlocal nodes
        d = len(seq)
        if d == n:
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(f"ordering search exceeded {budget} nodes")
        for v in range(n):
            if placed[v] or any(not placed[u] for u in must_follow[v]):
                continue
            seq.append(v)
            placed[v] = True
            if not any(p.k <= d + 1 and _ordered_match(p, seq, adj, induced, last=d) for p in pats):
                if rec():
                    return True
            seq.pop()
            placed[v] = False
        return False

    if rec():
        return tuple(seq)
    return None


def supergraph_closure(family: Iterable[OrderedGraph]) -> list:
    """All edge-supersets of each pattern on the same ordered vertex set."""
    seen = {}
    for f in family:
        c = f.canonical()
        missing = c.graph.complement_pairs()
        for r in range(len(missing) + 1):
            for extra in itertools.combinations(missing, r):
                h = OrderedGraph(Graph(c.size, c.graph.edges | frozenset(extra)))
                seen.setdefault(h.key(), h)
    return [seen[k] for k in sorted(seen)]


# --------------------------------------------------------------------------
# colorings


def _color_match_order(f: Graph, first: Sequence[int] = ()) -> list:
    """Pattern vertices ordered so each (after ``first``) touches an earlier one if possible."""
    order = list(first)
    seen = set(order)
    while len(order) < f.size:
        frontier = sorted(
            (v for v in range(f.size) if v not in seen),
            key=lambda v: (-len(f.adj[v] & seen), -f.degree(v), v),
        )
        v = frontier[0]
        order.append(v)
        seen.add(v)
    return order


def embeddings(
    f: Graph,
    g: Graph,
    fcolors: Sequence = None,
    gcolors: Sequence = None,
    order: Sequence[int] = None,
    stop_after_prefix: int = None,
):
    """Injective edge-preserving maps ``f -> g`` respecting non-wildcard colors.

    Yields dicts.  With ``stop_after_prefix = p``, yields each distinct
    assignment of the first ``p`` vertices of ``order`` that extends to a
    full embedding (once).
    """
    order = list(order) if order is not None else _color_match_order(f)
    pos = {v: i for i, v in enumerate(order)}
    back = [[u for u in f.adj[v] if pos[u] < pos[v]] for v in order]
    need = [f.degree(v) for v in order]
    image = {}
    used = set()

    def candidates(i):
        v = order[i]
        if back[i]:
            base = g.adj[image[back[i][0]]]
        else:
            base = range(g.size)
        for w in sorted(base):
            if w in used or g.degree(w) < need[i]:
                continue
            if fcolors is not None and fcolors[v] is not ANY and gcolors[w] != fcolors[v]:
                continue
            if all(image[u] in g.adj[w] for u in back[i]):
                yield w

    def assign(i, w):
        image[order[i]] = w
        used.add(w)

    def unassign(i, w):
        used.discard(w)
        del image[order[i]]

    def rec(i):
        if i == len(order):
            yield dict(image)
            return
        for w in list(candidates(i)):
            assign(i, w)
            yield from rec(i + 1)
            unassign(i, w)

    def completes(i):
        if i == len(order):
            return True
        for w in list(candidates(i)):
            assign(i, w)
            found = completes(i + 1)
            unassign(i, w)
            if found:
                return True
        return False

    def rec_prefix(i, p):
        if i == p:
            if completes(i):
                yield {order[j]: image[order[j]] for j in range(p)}
            return
        for w in list(candidates(i)):
            assign(i, w)
            yield from rec_prefix(i + 1, p)
            unassign(i, w)

    if stop_after_prefix is None:
        yield from rec(0)
    else:
        yield from rec_prefix(0, stop_after_prefix)


def _check_palette(g: ColoredGraph, f: ColoredGraph):
    if set(g.palette) != set(f.palette):
        raise InvariantError(f"palette mismatch: {g.palette} vs {f.palette}")


def colored_occurs(g: ColoredGraph, f: ColoredGraph) -> bool:
    """Is ``f`` a colored subgraph of ``g`` (wildcards in ``f`` match anything)?"""
    _check_palette(g, f)
    if not g.is_total:
        raise InvariantError("host graph must be fully colored")
    if f.size > g.size:
        return False
    for _ in embeddings(f.graph, g.graph, f.colors, g.colors):
        return True
    return False


def coloring_nogoods(g: Graph, family: Iterable[ColoredGraph]) -> Optional[set]:
    """Compile the family into nogoods: sets of ``(vertex, color)`` never all true.

    Returns ``None`` when some all-wildcard member already occurs in ``g``.
    """
    nogoods = set()
    for f in family:
        if f.size > g.size:
            continue
        fixed = [v for v in range(f.size) if f.colors[v] is not ANY]
        order = _color_match_order(f.graph, fixed) if fixed else _color_match_order(f.graph)
        if not fixed:
            for _ in embeddings(f.graph, g, order=order):
                return None
            continue
        for emb in embeddings(f.graph, g, order=order, stop_after_prefix=len(fixed)):
            nogoods.add(frozenset((emb[v], f.colors[v]) for v in fixed))
    return nogoods


def solve_coloring(
    g: Graph,
    palette: Sequence,
    family: Iterable[ColoredGraph],
    budget: Optional[int] = None,
) -> Optional[tuple]:
    """A coloring of ``g`` with no family member as a colored subgraph, or ``None``.

    Vertices are colored in index order, colors tried in palette order; a
    nogood is checked as soon as its last vertex is colored.
    """
    palette = tuple(palette)
    family = list(family)
    for f in family:
        if set(f.palette) != set(palette):
            raise InvariantError(f"pattern palette {f.palette} differs from {palette}")
    nogoods = coloring_nogoods(g, family)
    if nogoods is None:
        return None
    by_last = [[] for _ in range(g.size)]
    for ng in nogoods:
        last = max(v for v, _ in ng)
        by_last[last].append(ng)
    colors = [palette[0] if palette else None] * g.size
    active = [v for v in range(g.size) if any(v in {u for u, _ in ng} for ng in nogoods)]
    if not palette and g.size:
        return None
    nodes = 0

    def ok(v):
        for ng in by_last[v]:
            if all(colors[u] == c for u, c in ng):
                return False
        return True

    def rec(i):
        nonlocal nodes
        if i == len(active):
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(f"coloring search exceeded {budget} nodes")
        v = active[i]
        for c in palette:
            colors[v] = c
            if ok(v) and rec(i + 1):
                return True
        colors[v] = palette[0]
        return False

    if rec(0):
        return tuple(colors)
    return None
