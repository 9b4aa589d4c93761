"""Two-coloring graphs without monochromatic triangles vs. NAE-3-SAT."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..girth import shortest_cycle
from ..relcore import Graph, InvariantError, RelStructure, Signature


class GirthTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class Hypergraph3:
    """3-uniform hypergraph; each hyperedge is stored as a sorted triple."""

    size: int
    hyperedges: frozenset = frozenset()

    def __post_init__(self):
        edges = set()
        for e in self.hyperedges:
            e = tuple(sorted(e))
            if len(e) != 3 or len(set(e)) != 3:
                raise InvariantError(f"hyperedge {e} is not a 3-set")
            if not all(isinstance(x, int) and 0 <= x < self.size for x in e):
                raise InvariantError(f"hyperedge {e} out of range")
            if e in edges:
                raise InvariantError(f"duplicate hyperedge {e}")
            edges.add(e)
        object.__setattr__(self, "hyperedges", frozenset(edges))

    def as_structure(self) -> RelStructure:
        return RelStructure(Signature((("H", 3),)), self.size, {"H": self.hyperedges})

    def nae_colorable(self) -> bool:
        """Brute force over all 2-colorings."""
        for bits in itertools.product((0, 1), repeat=self.size):
            if all(len({bits[x] for x in e}) == 2 for e in self.hyperedges):
                return True
        return False


def triangles_to_nae(g: Graph) -> Hypergraph3:
    return Hypergraph3(g.size, frozenset(g.triangles()))


def nae_to_triangles(h: Hypergraph3) -> Graph:
    """Replace each hyperedge by a triangle; ``h`` must have girth at least four."""
    c = shortest_cycle(h.as_structure())
    if c is not None and c.length < 4:
        raise GirthTooSmall(f"hypergraph has a cycle of length {c.length}: {c}")
    edges = set()
    for a, b, c_ in h.hyperedges:
        edges.update({(a, b), (a, c_), (b, c_)})
    return Graph(h.size, frozenset(edges))
