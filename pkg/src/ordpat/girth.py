"""Cycles and girth of relational structures.

A cycle alternates distinct elements and distinct tuples, each element lying
in the tuples before and after it.  A tuple with a repeated coordinate is a
cycle of length one on its own.  Cycles of length ``t >= 2`` are exactly the
cycles of length ``2t`` in the element/tuple incidence graph, which is what
the searches below walk.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .relcore import RelStructure


@dataclass(frozen=True)
class StructCycle:
    elements: tuple  # x_0, ..., x_{t-1}
    tuples: tuple  # (symbol, tuple) refs; tuples[i] holds elements[i] and elements[i+1 mod t]

    @property
    def length(self) -> int:
        return len(self.tuples)

    def is_valid(self, s: RelStructure) -> bool:
        t = self.length
        if t == 0 or len(self.elements) != t:
            return False
        for name, tup in self.tuples:
            if tuple(tup) not in s.relations.get(name, ()):
                return False
        if t == 1:
            (name, tup), = self.tuples
            return len(set(tup)) < len(tup) and self.elements[0] in tup
        if len(set(self.elements)) != t or len(set(self.tuples)) != t:
            return False
        for i in range(t):
            here, after = self.elements[i], self.elements[(i + 1) % t]
            if here not in self.tuples[i][1] or after not in self.tuples[i][1]:
                return False
        return True


class _Incidence:
    """Mutable element/tuple incidence graph; tuple nodes are numbered after elements."""

    def __init__(self, s: RelStructure):
        self.n = s.size
        self.refs = s.all_tuples()
        self.adj = [set() for _ in range(self.n + len(self.refs))]
        self.alive = [True] * len(self.refs)
        for i, (_, tup) in enumerate(self.refs):
            node = self.n + i
            for x in set(tup):
                self.adj[x].add(node)
                self.adj[node].add(x)
        self.sorted_adj = [sorted(a) for a in self.adj]

    def remove(self, i: int):
        node = self.n + i
        self.alive[i] = False
        for x in self.adj[node]:
            self.adj[x].discard(node)
            self.sorted_adj[x].remove(node)
        self.adj[node] = set()
        self.sorted_adj[node] = []

    def degenerate(self) -> list:
        return [i for i, (_, t) in enumerate(self.refs) if self.alive[i] and len(set(t)) < len(t)]

    def cycle_through(self, root: int, bound: int):
        """Shortest incidence cycle through ``root`` of length <= ``bound`` (or None)."""
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        best = None
        while queue:
            u = queue.popleft()
            # anything closed while scanning u has length >= 2 * dist[u]
            if 2 * dist[u] > (bound if best is None else best[0] - 1):
                break
            for w in self.sorted_adj[u]:
                if w == parent[u]:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                else:
                    length = dist[u] + dist[w] + 1
                    if length <= bound and (best is None or length < best[0]):
                        best = (length, u, w)
        if best is None:
            return None
        _, u, w = best
        left = []
        while u is not None:
            left.append(u)
            u = parent[u]
        right = []
        while w is not None:
            right.append(w)
            w = parent[w]
        # root ... u, w ... (back to root)
        walk = left[::-1] + right[:-1]
        return walk

    def to_cycle(self, walk) -> StructCycle:
        elements = tuple(walk[0::2])
        tuples = tuple(self.refs[node - self.n] for node in walk[1::2])
        return StructCycle(elements, tuples)


def _degenerate_cycle(inc: _Incidence) -> Optional[StructCycle]:
    deg = inc.degenerate()
    if not deg:
        return None
    name, tup = inc.refs[deg[0]]
    x = next(v for v in tup if tup.count(v) > 1)
    return StructCycle((x,), ((name, tup),))


def _scan(inc: _Incidence, bound: int, start: int = 0):
    """First root (from ``start``) achieving the shortest cycle of length <= bound."""
    best = None
    for root in range(start, inc.n):
        limit = bound if best is None else len(best[1]) - 1
        if limit < 2 * 2:
            break
        walk = inc.cycle_through(root, limit)
        if walk is not None and (best is None or len(walk) < len(best[1])):
            best = (root, walk)
    return best


def shortest_cycle(s: RelStructure) -> Optional[StructCycle]:
    """A minimum-length cycle of ``s``, or ``None`` if ``s`` is a forest."""
    inc = _Incidence(s)
    deg = _degenerate_cycle(inc)
    if deg is not None:
        return deg
    found = _scan(inc, bound=2 * (s.size + len(inc.refs)))
    if found is None:
        return None
    return inc.to_cycle(found[1])


def girth(s: RelStructure) -> Optional[int]:
    """Length of the shortest cycle, ``None`` for forests."""
    c = shortest_cycle(s)
    return None if c is None else c.length


def raise_girth(s: RelStructure, g: int) -> RelStructure:
    """Delete tuples until every cycle has length at least ``g``.

    Repeatedly takes a shortest cycle (as ``shortest_cycle`` would report it)
    and deletes its least tuple.  Deleting tuples never creates cycles, so
    once no root carries a cycle of the current length it never will again;
    the scan resumes from the last root instead of restarting.
    """
    if g < 1:
        raise ValueError("girth target must be >= 1")
    inc = _Incidence(s)
    removed = []
    if g >= 2:
        for i in inc.degenerate():
            inc.remove(i)
            removed.append(inc.refs[i])
    index = {ref: i for i, ref in enumerate(inc.refs)}
    for length in range(2, g):
        root = 0
        while root < inc.n:
            walk = inc.cycle_through(root, 2 * length)
            if walk is None:
                root += 1
                continue
            cycle = inc.to_cycle(walk)
            victim = min(cycle.tuples, key=lambda ref: index[ref])
            inc.remove(index[victim])
            removed.append(victim)
    return s.without(removed)
