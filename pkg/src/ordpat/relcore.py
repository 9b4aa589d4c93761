"""Relational structures, graphs, weak orders and homomorphism search.

Universes are always ``range(size)``.  Values are immutable once built.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence

Ranks = tuple  # canonical rank sequence, e.g. (2, 1, 2, 3)
TupleRef = tuple  # (symbol name, element tuple)


class InvariantError(ValueError):
    """A value violates one of its type invariants."""


class SignatureMismatch(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A search visited more nodes than its budget allows."""


class Verdict(enum.Enum):
    YES = "YES"
    NO = "NO"


# --------------------------------------------------------------------------
# rank patterns / weak orders


def canonical_ranks(values: Iterable) -> Ranks:
    """Dense 1-based ranks of ``values``: ``(5, 2, 5, 9) -> (2, 1, 2, 3)``."""
    values = tuple(values)
    order = {v: i + 1 for i, v in enumerate(sorted(set(values)))}
    return tuple(order[v] for v in values)


def is_canonical(ranks: Sequence[int]) -> bool:
    return set(ranks) == set(range(1, len(set(ranks)) + 1)) and all(
        isinstance(r, int) and r >= 1 for r in ranks
    )


def is_linear(ranks: Sequence[int]) -> bool:
    return len(set(ranks)) == len(ranks)


def weak_orders(k: int) -> Iterator[Ranks]:
    """All canonical rank sequences of length ``k`` in lexicographic order."""
    for ranks in itertools.product(range(1, k + 1), repeat=k):
        if max(ranks, default=0) == len(set(ranks)):
            yield ranks


def linear_orders(k: int) -> Iterator[Ranks]:
    for perm in itertools.permutations(range(1, k + 1)):
        yield perm


# --------------------------------------------------------------------------
# signatures and structures


@dataclass(frozen=True)
class Signature:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple((str(name), int(arity)) for name, arity in self.symbols)
        names = [name for name, _ in symbols]
        if len(set(names)) != len(names):
            raise InvariantError("signature: symbol names must be unique")
        for name, arity in symbols:
            if arity < 1:
                raise InvariantError(f"signature: arity of {name!r} must be >= 1")
        object.__setattr__(self, "symbols", symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    @property
    def names(self) -> tuple:
        return tuple(name for name, _ in self.symbols)

    @property
    def max_arity(self) -> int:
        return max((a for _, a in self.symbols), default=0)

    def arity(self, name: str) -> int:
        for n, a in self.symbols:
            if n == name:
                return a
        raise KeyError(name)

    def index(self, name: str) -> int:
        return self.names.index(name)


def _freeze_tuples(name, arity, size, tuples) -> frozenset:
    tuples = [tuple(t) for t in tuples]
    for t in tuples:
        if len(t) != arity:
            raise InvariantError(f"tuple {t} of {name}: length {len(t)} != arity {arity}")
        for x in t:
            if not isinstance(x, int) or not 0 <= x < size:
                raise InvariantError(f"tuple {t} of {name}: index {x!r} out of range 0..{size - 1}")
    frozen = frozenset(tuples)
    if len(frozen) != len(tuples):
        dup = next(t for t in tuples if tuples.count(t) > 1)
        raise InvariantError(f"duplicate tuple {dup} in relation {name}")
    return frozen


@dataclass(frozen=True, eq=False)
class RelStructure:
    signature: Signature
    size: int
    relations: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        if self.size < 0:
            raise InvariantError("structure size must be non-negative")
        given = dict(self.relations)
        unknown = set(given) - set(self.signature.names)
        if unknown:
            raise InvariantError(f"relations for unknown symbols {sorted(unknown)}")
        rels = {
            name: _freeze_tuples(name, arity, self.size, given.get(name, ()))
            for name, arity in self.signature
        }
        object.__setattr__(self, "relations", rels)

    def __eq__(self, other):
        if not isinstance(other, RelStructure):
            return NotImplemented
        return (self.signature, self.size, self.relations) == (
            other.signature,
            other.size,
            other.relations,
        )

    def __hash__(self):
        return hash((self.signature, self.size, tuple(sorted(self.relations.items()))))

    def __repr__(self):
        rels = {k: sorted(v) for k, v in self.relations.items()}
        return f"RelStructure(size={self.size}, relations={rels})"

    def tuples(self, name: str) -> list:
        return sorted(self.relations[name])

    def all_tuples(self) -> list:
        """Every ``(symbol, tuple)`` reference, in canonical order."""
        return [(name, t) for name in self.signature.names for t in self.tuples(name)]

    @property
    def tuple_count(self) -> int:
        return sum(len(v) for v in self.relations.values())

    def without(self, refs: Iterable[TupleRef]) -> "RelStructure":
        drop = {}
        for name, t in refs:
            drop.setdefault(name, set()).add(tuple(t))
        rels = {n: ts - drop.get(n, set()) for n, ts in self.relations.items()}
        return RelStructure(self.signature, self.size, rels)

    def key(self) -> tuple:
        return (self.size, tuple(tuple(self.tuples(n)) for n in self.signature.names))


def max_degree(s: RelStructure) -> int:
    """Largest number of tuples (over all symbols) containing one element."""
    deg = [0] * s.size
    for _, t in s.all_tuples():
        for x in set(t):
            deg[x] += 1
    return max(deg, default=0)


# --------------------------------------------------------------------------
# graphs


def _norm_edge(e) -> tuple:
    u, v = e
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    size: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        raw = [tuple(e) for e in self.edges]
        edges = set()
        for e in raw:
            if len(e) != 2:
                raise InvariantError(f"edge {e} is not a pair")
            u, v = e
            if u == v:
                raise InvariantError(f"loop at vertex {u}")
            for x in e:
                if not isinstance(x, int) or not 0 <= x < self.size:
                    raise InvariantError(f"edge {e}: vertex {x!r} out of range")
            ne = _norm_edge(e)
            if ne in edges:
                raise InvariantError(f"duplicate edge {ne}")
            edges.add(ne)
        object.__setattr__(self, "edges", frozenset(edges))

    def __repr__(self):
        return f"Graph({self.size}, {sorted(self.edges)})"

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @cached_property
    def adj(self) -> tuple:
        nb = [set() for _ in range(self.size)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(x) for x in nb)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge((u, v)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def relabel(self, mapping: Sequence[int], size: Optional[int] = None) -> "Graph":
        """Image under ``mapping`` (old vertex -> new vertex)."""
        size = self.size if size is None else size
        return Graph(size, frozenset(_norm_edge((mapping[u], mapping[v])) for u, v in self.edges))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph(
            len(vertices),
            frozenset(
                _norm_edge((index[u], index[v]))
                for u, v in self.edges
                if u in index and v in index
            ),
        )

    def complement_pairs(self) -> list:
        return [e for e in itertools.combinations(range(self.size), 2) if e not in self.edges]

    def triangles(self) -> list:
        out = []
        for u, v in self.sorted_edges():
            for w in sorted(self.adj[u] & self.adj[v]):
                if w > v:
                    out.append((u, v, w))
        return out

    def as_structure(self, name: str = "E", symmetric: bool = False) -> RelStructure:
        """Binary structure with one tuple ``(u, v), u < v`` per edge.

        ``symmetric=True`` adds both orientations; every edge then closes a
        cycle of length two, so girth is only meaningful in the default form.
        """
        sig = Signature(((name, 2),))
        ts = set(self.edges)
        if symmetric:
            ts |= {(v, u) for u, v in self.edges}
        return RelStructure(sig, self.size, {name: ts})


def disjoint_union(*graphs: Graph) -> Graph:
    edges = set()
    offset = 0
    for g in graphs:
        edges.update((u + offset, v + offset) for u, v in g.edges)
        offset += g.size
    return Graph(offset, frozenset(edges))


@dataclass(frozen=True)
class OrderedGraph:
    """A graph together with a linear order; ``order`` lists vertices first to last."""

    graph: Graph
    order: tuple = None

    def __post_init__(self):
        order = tuple(range(self.graph.size)) if self.order is None else tuple(self.order)
        if sorted(order) != list(range(self.graph.size)):
            raise InvariantError("order must be a permutation of the vertices")
        object.__setattr__(self, "order", order)

    @classmethod
    def from_edges(cls, n: int, edges) -> "OrderedGraph":
        return cls(Graph(n, frozenset(edges)))

    @property
    def size(self) -> int:
        return self.graph.size

    @cached_property
    def position(self) -> tuple:
        pos = [0] * self.size
        for i, v in enumerate(self.order):
            pos[v] = i
        return tuple(pos)

    def canonical(self) -> "OrderedGraph":
        """Relabel so that vertex ``i`` is the ``i``-th smallest."""
        return OrderedGraph(self.graph.relabel(self.position))

    def key(self) -> tuple:
        c = self.canonical()
        return (c.size, tuple(c.graph.sorted_edges()))


@dataclass(frozen=True)
class ColoredGraph:
    """A vertex-colored graph.

    ``colors[v]`` is a palette member.  In forbidden patterns a color may be
    ``ANY`` (``None``), standing for every palette color at once.
    """

    graph: Graph
    colors: tuple
    palette: tuple

    def __post_init__(self):
        colors = tuple(self.colors)
        palette = tuple(self.palette)
        if len(set(palette)) != len(palette):
            raise InvariantError("palette colors must be distinct")
        if len(colors) != self.graph.size:
            raise InvariantError("every vertex must be colored")
        for v, c in enumerate(colors):
            if c is not ANY and c not in palette:
                raise InvariantError(f"vertex {v}: color {c!r} not in palette")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "palette", palette)

    @property
    def size(self) -> int:
        return self.graph.size

    @property
    def is_total(self) -> bool:
        return all(c is not ANY for c in self.colors)

    @property
    def wildcards(self) -> int:
        return sum(c is ANY for c in self.colors)

    def expand(self) -> Iterator["ColoredGraph"]:
        """Every total coloring this (possibly wildcard) pattern stands for."""
        slots = [i for i, c in enumerate(self.colors) if c is ANY]
        for choice in itertools.product(self.palette, repeat=len(slots)):
            colors = list(self.colors)
            for i, c in zip(slots, choice):
                colors[i] = c
            yield ColoredGraph(self.graph, tuple(colors), self.palette)


ANY = None


# --------------------------------------------------------------------------
# temporal templates


@dataclass(frozen=True, eq=False)
class TemporalStructure:
    """Order-invariant template on Q, given by the allowed rank patterns per symbol."""

    signature: Signature
    allowed: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        given = dict(self.allowed)
        unknown = set(given) - set(self.signature.names)
        if unknown:
            raise InvariantError(f"patterns for unknown symbols {sorted(unknown)}")
        allowed = {}
        for name, arity in self.signature:
            pats = [tuple(p) for p in given.get(name, ())]
            for p in pats:
                if len(p) != arity:
                    raise InvariantError(f"pattern {p} of {name}: length != arity {arity}")
                if not is_canonical(p):
                    raise InvariantError(f"pattern {p} of {name} is not canonical")
            if len(set(pats)) != len(pats):
                raise InvariantError(f"duplicate pattern in {name}")
            allowed[name] = frozenset(pats)
        object.__setattr__(self, "allowed", allowed)

    def __eq__(self, other):
        if not isinstance(other, TemporalStructure):
            return NotImplemented
        return (self.signature, self.allowed) == (other.signature, other.allowed)

    def __hash__(self):
        return hash((self.signature, tuple(sorted(self.allowed.items()))))

    def __repr__(self):
        return f"TemporalStructure({ {k: sorted(v) for k, v in self.allowed.items()} })"

    @classmethod
    def everything(cls, signature: Signature) -> "TemporalStructure":
        return cls(signature, {n: set(weak_orders(a)) for n, a in signature})

    @cached_property
    def projections(self) -> dict:
        """symbol -> coordinate subset -> canonical patterns of allowed restrictions."""
        out = {}
        for name, arity in self.signature:
            table = {}
            for r in range(1, arity + 1):
                for pos in itertools.combinations(range(arity), r):
                    table[pos] = {canonical_ranks(p[i] for i in pos) for p in self.allowed[name]}
            out[name] = table
        return out

    def repeat_free(self) -> bool:
        return all(is_linear(p) for pats in self.allowed.values() for p in pats)


def temporal_tuple_allowed(t: TemporalStructure, symbol: str, pattern: Sequence[int]) -> bool:
    arity = t.signature.arity(symbol)
    if len(pattern) != arity:
        raise InvariantError(f"pattern length {len(pattern)} != arity {arity} of {symbol}")
    return tuple(pattern) in t.allowed[symbol]


def tuple_pattern(ranks: Sequence[int], tup: Sequence[int]) -> Ranks:
    return canonical_ranks(ranks[x] for x in tup)


def is_temporal_witness(s: RelStructure, t: TemporalStructure, ranks: Sequence[int]) -> bool:
    if len(ranks) != s.size:
        return False
    for name, tup in s.all_tuples():
        if tuple_pattern(ranks, tup) not in t.allowed[name]:
            return False
    return True


def compose_witness(ranks: Sequence[int], mapping: Sequence[int]) -> Ranks:
    """Pull a weak order back along ``mapping`` (element -> element)."""
    return canonical_ranks(ranks[m] for m in mapping)


# --------------------------------------------------------------------------
# homomorphisms


def _check_signatures(a, b):
    if a.signature != b.signature:
        raise SignatureMismatch(f"{a.signature.symbols} != {b.signature.symbols}")


def is_homomorphism(a: RelStructure, b: RelStructure, mapping: Sequence[int]) -> bool:
    _check_signatures(a, b)
    if len(mapping) != a.size:
        return False
    for name, t in a.all_tuples():
        if tuple(mapping[x] for x in t) not in b.relations[name]:
            return False
    return True


def hom_exists(a: RelStructure, b: RelStructure, injective: bool = False) -> Optional[tuple]:
    """First homomorphism ``a -> b`` in lexicographic order of the image tuple."""
    _check_signatures(a, b)
    if injective and a.size > b.size:
        return None
    # tuples of a grouped by the element whose assignment completes them
    touching = [[] for _ in range(a.size)]
    for name, t in a.all_tuples():
        for x in set(t):
            touching[x].append((name, t))
    # support[name][pos][value] = set of b-tuples having value at pos
    support = {}
    for name, arity in a.signature:
        sup = [dict() for _ in range(arity)]
        for t in b.relations[name]:
            for i, v in enumerate(t):
                sup[i].setdefault(v, set()).add(t)
        support[name] = sup

    image = [None] * a.size
    used = set()

    def consistent(x):
        for name, t in touching[x]:
            cands = None
            for i, y in enumerate(t):
                v = image[y]
                if v is None:
                    continue
                s = support[name][i].get(v)
                if not s:
                    return False
                cands = s if cands is None else cands & s
                if not cands:
                    return False
        return True

    def rec(x):
        if x == a.size:
            return True
        for v in range(b.size):
            if injective and v in used:
                continue
            image[x] = v
            if consistent(x):
                used.add(v)
                if rec(x + 1):
                    return True
                used.discard(v)
            image[x] = None
        return False

    if rec(0):
        return tuple(image)
    return None


def blow_up(s: RelStructure, n: int):
    """Replace each element by ``n`` copies; returns ``(structure, projection)``.

    Copy ``i`` of element ``b`` is element ``b * n + i``.
    """
    if n < 1:
        raise ValueError("blow-up factor must be >= 1")
    rels = {}
    for name in s.signature.names:
        ts = set()
        for t in s.relations[name]:
            for choice in itertools.product(range(n), repeat=len(t)):
                ts.add(tuple(b * n + i for b, i in zip(t, choice)))
        rels[name] = ts
    projection = tuple(x // n for x in range(s.size * n))
    return RelStructure(s.signature, s.size * n, rels), projection


# --------------------------------------------------------------------------
# temporal CSP search


class _WeakOrderSearch:
    """Backtracking over weak orders, inserting one element at a time.

    Inserting an element never changes the relative order of elements already
    placed, so a tuple's partial pattern can be checked as soon as any of its
    coordinates is placed.
    """

    def __init__(self, s, t, budget=None, linear=False, refine=None):
        _check_signatures(s, t)
        self.s, self.t = s, t
        self.budget = budget
        self.linear = linear
        self.refine = refine
        self.nodes = 0
        self.touching = [[] for _ in range(s.size)]
        for name, tup in s.all_tuples():
            for x in set(tup):
                self.touching[x].append((name, tup))
        self.proj = t.projections
        self.order = self._variable_order()

    def _variable_order(self):
        # least unplaced element sharing a tuple with a placed one, else least unplaced
        s = self.s
        nbrs = [set() for _ in range(s.size)]
        for _, tup in s.all_tuples():
            for x in tup:
                nbrs[x].update(tup)
        placed = [False] * s.size
        order = []

        frontier = []
        for start in range(s.size):
            if placed[start]:
                continue
            heapq.heappush(frontier, start)
            while frontier:
                x = heapq.heappop(frontier)
                if placed[x]:
                    continue
                placed[x] = True
                order.append(x)
                for y in nbrs[x]:
                    if not placed[y]:
                        heapq.heappush(frontier, y)
        return order

    def _ok(self, x, cell):
        # cell[y] is the [key, members] class of a placed element y
        for name, tup in self.touching[x]:
            pos = tuple(i for i, y in enumerate(tup) if y in cell)
            pat = canonical_ranks(cell[tup[i]][0] for i in pos)
            if pat not in self.proj[name][pos]:
                return False
        if self.refine is not None:
            w = self.refine
            kx = cell[x][0]
            for y, c in cell.items():
                if w[y] < w[x] and not c[0] < kx:
                    return False
                if w[y] > w[x] and not c[0] > kx:
                    return False
        return True

    def run(self):
        classes = []  # [key, members] cells, lowest first; keys increase
        cell = {}

        def fresh_key(j):
            lo = classes[j - 1][0] if j > 0 else None
            hi = classes[j][0] if j < len(classes) else None
            if lo is None and hi is None:
                return 0.0
            if lo is None:
                return hi - 1.0
            if hi is None:
                return lo + 1.0
            mid = (lo + hi) / 2
            if lo < mid < hi:
                return mid
            for i, c in enumerate(classes):  # gaps exhausted: respace
                c[0] = float(i)
            return fresh_key(j)

        def rec(depth):
            if depth == len(self.order):
                return True
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise BudgetExceeded(f"temporal search exceeded {self.budget} nodes")
            x = self.order[depth]
            m = len(classes)
            # joining an existing class first, then a new class at each gap
            slots = [] if self.linear else [(j, True) for j in range(m)]
            slots += [(j, False) for j in range(m + 1)]
            for j, join in slots:
                if join:
                    c = classes[j]
                    c[1].append(x)
                else:
                    c = [fresh_key(j), [x]]
                    classes.insert(j, c)
                cell[x] = c
                if self._ok(x, cell) and rec(depth + 1):
                    return True
                del cell[x]
                if join:
                    c[1].pop()
                else:
                    del classes[j]
            return False

        if not rec(0):
            return None
        return canonical_ranks(cell[x][0] for x in range(self.s.size))


def temporal_hom_exists(
    s: RelStructure, t: TemporalStructure, budget: Optional[int] = None
) -> Optional[Ranks]:
    """A weak order on ``s`` under which every tuple has an allowed pattern.

    Returns the ranks (1-based, canonical) or ``None``.  Raises
    ``BudgetExceeded`` if ``budget`` search nodes do not settle the question.
    """
    return _WeakOrderSearch(s, t, budget=budget).run()


def linearize_witness(
    s: RelStructure, t: TemporalStructure, w: Sequence[int], budget: Optional[int] = None
) -> Optional[Ranks]:
    """Break the ties of witness ``w`` so that it stays a witness."""
    w = tuple(w)
    if is_linear(w):
        return w
    guess = canonical_ranks((r, x) for x, r in enumerate(w))
    if is_temporal_witness(s, t, guess):
        return guess
    return _WeakOrderSearch(s, t, budget=budget, linear=True, refine=w).run()
