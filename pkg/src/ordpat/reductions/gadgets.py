"""Relational structures encoded as graphs through rigid gadgets.

Every symbol ``R_i`` (1-based ``i``) of arity ``r_i`` gets a gadget ``G_i``:
a ``K``-cycle ``v_1 .. v_K`` with chords ``v_1 v_{K-1}`` and ``v_1 v_{K-2}``,
plus ``r_i`` pendant paths of ``K`` vertices hanging from
``v_i .. v_{i+r_i-1}``.  The far ends of the paths are the roots, and the
``j``-th root carries the ``j``-th coordinate of a tuple.  ``K = |tau| + r + 3``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from ..relcore import ANY, ColoredGraph, Graph, RelStructure, Signature, Verdict


@dataclass(frozen=True)
class Gadget:
    graph: Graph
    roots: tuple  # root vertex of the j-th path
    core: tuple  # v_1 .. v_K

    @property
    def non_roots(self) -> list:
        roots = set(self.roots)
        return [v for v in range(self.graph.size) if v not in roots]


@dataclass(frozen=True)
class GadgetSpec:
    signature: Signature
    K: int
    gadgets: dict  # symbol name -> Gadget


def build_gadgets(sig: Signature) -> GadgetSpec:
    K = len(sig) + sig.max_arity + 3
    gadgets = {}
    for i, (name, arity) in enumerate(sig, start=1):
        edges = {(j, (j + 1) % K) for j in range(K)}
        edges |= {(0, K - 2), (0, K - 3)}
        nxt = K
        roots = []
        for j in range(arity):
            prev = i - 1 + j  # v_{i+j}
            for _ in range(K - 1):
                edges.add((prev, nxt))
                prev = nxt
                nxt += 1
            roots.append(prev)
        gadgets[name] = Gadget(Graph(nxt, frozenset(edges)), tuple(roots), tuple(range(K)))
    return GadgetSpec(sig, K, gadgets)


class Encoding(NamedTuple):
    graph: Graph
    base: int  # vertices 0..base-1 are the structure's elements
    copies: list  # (symbol, tuple, gadget vertex -> graph vertex)


def _glue(spec: GadgetSpec, base: int, refs: Sequence) -> Encoding:
    edges = set()
    nxt = base
    copies = []
    for name, tup in refs:
        gad = spec.gadgets[name]
        vmap = {}
        for v in range(gad.graph.size):
            if v in gad.roots:
                vmap[v] = tup[gad.roots.index(v)]
            else:
                vmap[v] = nxt
                nxt += 1
        for u, v in gad.graph.edges:
            a, b = vmap[u], vmap[v]
            edges.add((min(a, b), max(a, b)))
        copies.append((name, tuple(tup), vmap))
    return Encoding(Graph(nxt, frozenset(edges)), base, copies)


def structure_to_graph(t: RelStructure) -> Encoding:
    """One fresh gadget copy per tuple, glued onto the elements at its roots."""
    return _glue(build_gadgets(t.signature), t.size, t.all_tuples())


@dataclass(frozen=True)
class ColoredStructure:
    """A structure with one color per element (a lift)."""

    structure: RelStructure
    colors: tuple


def forbidden_family(sig: Signature, palette: Sequence, patterns: Sequence[ColoredStructure]) -> list:
    """Forbidden colored graphs; ``ANY`` marks vertices whose every coloring is meant.

    (1) each gadget plus one edge between non-adjacent vertices,
    (2) each gadget plus a pendant vertex at a non-root,
    (3) for every colored pattern S', the glued graph G_S colored like S' on S.
    """
    palette = tuple(palette)
    spec = build_gadgets(sig)
    family = []
    for name in sig.names:
        gad = spec.gadgets[name].graph
        for u, v in gad.complement_pairs():
            g = Graph(gad.size, gad.edges | {(u, v)})
            family.append(ColoredGraph(g, (ANY,) * g.size, palette))
    for name in sig.names:
        gad = spec.gadgets[name]
        n = gad.graph.size
        for v in gad.non_roots:
            g = Graph(n + 1, gad.graph.edges | {(v, n)})
            family.append(ColoredGraph(g, (ANY,) * (n + 1), palette))
    for pat in patterns:
        s = pat.structure
        enc = _glue(spec, s.size, s.all_tuples())
        colors = tuple(pat.colors) + (ANY,) * (enc.graph.size - s.size)
        family.append(ColoredGraph(enc.graph, colors, palette))
    return family


def family_size(family: Sequence[ColoredGraph]) -> int:
    """Number of fully colored graphs the family stands for."""
    return sum(len(f.palette) ** f.wildcards for f in family)


def gadget_images(g: Graph, gadget: Gadget):
    """Maps of the gadget into ``g``, injective off the roots.

    Root images may coincide with each other but not with non-root images.
    Yields ``(root images, vertex map)``.
    """
    n = gadget.graph.size
    # core cycle first, then outwards along the paths
    order = list(gadget.core)
    seen = set(order)
    i = 0
    while i < len(order):
        for w in sorted(gadget.graph.adj[order[i]]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    roots = set(gadget.roots)
    pos = {v: i for i, v in enumerate(order)}
    back = [[u for u in gadget.graph.adj[v] if pos[u] < pos[v]] for v in order]
    image = {}
    used_nonroot = set()
    root_images = set()

    def candidates(i):
        v = order[i]
        base = g.adj[image[back[i][0]]] if back[i] else range(g.size)
        is_root = v in roots
        for w in sorted(base):
            if w in used_nonroot:
                continue
            if not is_root and (w in root_images or g.degree(w) < gadget.graph.degree(v)):
                continue
            if all(image[u] in g.adj[w] for u in back[i]):
                yield w

    def rec(i):
        if i == n:
            yield tuple(image[r] for r in gadget.roots), dict(image)
            return
        v = order[i]
        is_root = v in roots
        for w in list(candidates(i)):
            image[v] = w
            if is_root:
                fresh = w not in root_images
                root_images.add(w)
            else:
                used_nonroot.add(w)
            yield from rec(i + 1)
            if is_root:
                if fresh:
                    root_images.discard(w)
            else:
                used_nonroot.discard(w)
            del image[v]

    yield from rec(0)


class Decoded(NamedTuple):
    structure: RelStructure
    vertices: tuple  # graph vertex of each element


def graph_to_structure(g: Graph, sig: Signature):
    """Read a structure back from gadget copies in ``g``.

    Returns ``Verdict.NO`` when some injective gadget copy has an extra edge
    between its vertices or an outside neighbour at a non-root (such graphs
    contain a member of families (1)/(2)).  Otherwise the elements are the
    root images plus the isolated vertices of ``g``, with one tuple per copy.
    """
    spec = build_gadgets(sig)
    found = []
    for name in sig.names:
        gad = spec.gadgets[name]
        seen = set()
        for root_imgs, vmap in gadget_images(g, gad):
            key = (root_imgs, frozenset(vmap[v] for v in gad.non_roots))
            if key in seen:
                continue
            seen.add(key)
            if len(set(vmap.values())) == gad.graph.size and _has_extra(g, gad, vmap):
                return Verdict.NO
            found.append((name, root_imgs))
    vertices = sorted({x for _, t in found for x in t} | {v for v in range(g.size) if g.degree(v) == 0})
    index = {v: i for i, v in enumerate(vertices)}
    rels = {name: set() for name in sig.names}
    for name, t in found:
        rels[name].add(tuple(index[x] for x in t))
    return Decoded(RelStructure(sig, len(vertices), rels), tuple(vertices))


def _has_extra(g: Graph, gad: Gadget, vmap: dict) -> bool:
    inside = set(vmap.values())
    for u, v in itertools.combinations(range(gad.graph.size), 2):
        if not gad.graph.has_edge(u, v) and g.has_edge(vmap[u], vmap[v]):
            return True
    for v in gad.non_roots:
        if g.adj[vmap[v]] - inside:
            return True
    return False
