"""Sparse, high-girth blow-ups that keep temporal CSP membership.

``generate`` samples fiber tuples above each tuple of ``B`` and then deletes
tuples on short cycles.  The rest of the module is the harness around it:
the spanning condition on fibers, interval extraction, and the resampling
procedure that pulls a weak order on the blow-up back down to ``B``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .girth import girth, raise_girth
from .relcore import (
    BudgetExceeded,
    RelStructure,
    TemporalStructure,
    canonical_ranks,
    compose_witness,
    is_homomorphism,
    is_temporal_witness,
    max_degree,
    temporal_hom_exists,
    tuple_pattern,
)

FUBINI_MAX = 12
PRACTICAL_N = 10**6


def fubini(n: int) -> int:
    """Number of weak orders of an ``n``-element set."""
    if n < 0:
        raise ValueError("fubini is defined for n >= 0")
    if n > FUBINI_MAX:
        raise ValueError(f"fubini({n}) refused: n > {FUBINI_MAX}")
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(math.comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


@dataclass(frozen=True)
class SilParams:
    n: Optional[int]  # block size; None when the formula value is impractical
    g: int
    delta: float
    delta_max: float
    p: dict  # arity -> inclusion probability
    seed: int = 0
    n_formula: int = 0
    n_symbolic: str = ""

    @property
    def practical(self) -> bool:
        return self.n is not None


def tsil_parameters(
    b: RelStructure, g: int, n: Optional[int] = None, seed: int = 0, cap: int = PRACTICAL_N
) -> SilParams:
    if g < 2:
        raise ValueError("girth target must be >= 2")
    if b.size == 0:
        raise ValueError("source structure must be nonempty")
    sig = b.signature
    r = sig.max_arity
    size = b.size
    delta = 1.0 / (math.e * r ** (r + 2) * len(sig) * size**r)
    spread = r * (max_degree(b) - 1) + 1
    # with no tuples condition (1) holds for every delta
    delta_max = 1.0 / (math.e * fubini(r) * r * spread) if spread > 0 else math.inf
    exponent = 3 * g * g * r
    n_formula = size**exponent
    if n is None:
        n = n_formula if n_formula <= cap else None
    elif n < 1:
        raise ValueError("n must be >= 1")
    p = {}
    if n is not None:
        for _, k in sig:
            p[k] = min(1.0, n ** (1 - k + 1 / g))
    return SilParams(n, g, delta, delta_max, p, seed, n_formula, f"{size}^{exponent}")


@dataclass(frozen=True)
class SilInstance:
    source: RelStructure
    blown: RelStructure
    projection: tuple
    params: SilParams
    sampled: int = 0  # tuple count before cycle removal

    def fiber(self, x: int) -> range:
        n = self.params.n
        return range(x * n, (x + 1) * n)

    def problems(self) -> list:
        """Violated instance invariants, as messages (empty when all hold)."""
        out = []
        n = self.params.n
        if len(self.projection) != self.source.size * n or any(
            self.projection[v] != v // n for v in range(len(self.projection))
        ):
            out.append("fiber: projection is not the block map")
        if not is_homomorphism(self.blown, self.source, self.projection):
            out.append("projection: not a homomorphism")
        gi = girth(self.blown)
        if gi is not None and gi < self.params.g:
            out.append(f"girth: {gi} < {self.params.g}")
        return out


def generate(b: RelStructure, params: SilParams) -> SilInstance:
    if params.n is None:
        raise ValueError(f"n = {params.n_symbolic} is impractical; pass an explicit n")
    n = params.n
    rng = np.random.default_rng(params.seed)
    rels = {name: set() for name in b.signature.names}
    for name, tup in b.all_tuples():
        k = len(tup)
        hits = np.flatnonzero(rng.random(n**k) < params.p[k])
        coords = np.unravel_index(hits, (n,) * k)
        for choice in zip(*(c.tolist() for c in coords)):
            rels[name].add(tuple(x * n + i for x, i in zip(tup, choice)))
    dense = RelStructure(b.signature, b.size * n, rels)
    projection = tuple(v // n for v in range(b.size * n))
    blown = raise_girth(dense, params.g)
    return SilInstance(b, blown, projection, params, dense.tuple_count)


# --------------------------------------------------------------------------
# spanning condition


def _fiber_classes(ranks, fiber) -> list:
    """Elements of ``fiber`` grouped by rank, lowest class first."""
    by = {}
    for v in fiber:
        by.setdefault(ranks[v], []).append(v)
    return [by[r] for r in sorted(by)]


def _minimal_windows(classes, threshold) -> list:
    """For each start class, the shortest run of classes with more than ``threshold`` elements."""
    out = []
    for i in range(len(classes)):
        total = 0
        for j in range(i, len(classes)):
            total += len(classes[j])
            if total > threshold:
                out.append((i, j))
                break
    return out


def verify_spanning(inst: SilInstance, ranks: Sequence[int], delta: float, budget: Optional[int] = None):
    """Check that large order-convex subsets of fibers always span a tuple.

    Order-convex sets in a fiber are runs of whole rank classes, and the
    condition only gets harder for smaller sets, so it suffices to test the
    shortest qualifying run from every start class.  Returns ``None`` when
    the condition holds, else ``(symbol, tuple of B, sets)`` for the first
    family that spans nothing.
    """
    n = inst.params.n
    threshold = delta * n
    checked = 0
    for name, tup in inst.source.all_tuples():
        classes = [_fiber_classes(ranks, inst.fiber(x)) for x in tup]
        where = [{v: c for c, cl in enumerate(cls) for v in cl} for cls in classes]
        windows = [_minimal_windows(cls, threshold) for cls in classes]
        above = [
            tuple(where[i][y] for i, y in enumerate(u))
            for u in inst.blown.relations[name]
            if all(inst.projection[y] == x for y, x in zip(u, tup))
        ]
        for family in itertools.product(*windows):
            checked += 1
            if budget is not None and checked > budget:
                raise BudgetExceeded(f"spanning check exceeded {budget} families")
            if not any(all(lo <= c <= hi for c, (lo, hi) in zip(u, family)) for u in above):
                sets = tuple(
                    tuple(sorted(v for cl in classes[i][lo : hi + 1] for v in cl))
                    for i, (lo, hi) in enumerate(family)
                )
                return name, tup, sets
    return None


# --------------------------------------------------------------------------
# interval extraction


def _realizes(ranks, sets, target) -> bool:
    return all(
        canonical_ranks(ranks[v] for v in choice) == tuple(target)
        for choice in itertools.product(*sets)
    )


def good_tuples(ranks: Sequence[int], k: int, n: int, target: Sequence[int]) -> list:
    """Cross-block tuples (one element per block) whose pattern is ``target``."""
    target = tuple(target)
    blocks = [range(i * n, (i + 1) * n) for i in range(k)]
    return [
        u for u in itertools.product(*blocks) if canonical_ranks(ranks[v] for v in u) == target
    ]


def _construct(ranks, tuples, k, size):
    """The inductive construction on blocks already sorted by target rank.

    ``tuples`` are the good tuples still in play; sets are drawn only from
    elements occurring in them.  Returns a list of sets or ``None``.
    """
    if k == 0:
        return []
    if not tuples:
        return None
    pools = [sorted({u[i] for u in tuples}, key=lambda v: (ranks[v], v)) for i in range(k)]
    if k == 1:
        return [pools[0][:size]] if len(pools[0]) >= size else None
    target = canonical_ranks(ranks[v] for v in tuples[0])
    if target[k - 1] != target[k - 2]:
        # last block alone on top: keep its top elements, recurse on the rest
        if len(pools[k - 1]) < size:
            return None
        top = pools[k - 1][-size:]
        floor = ranks[top[0]]
        chosen = set(top)
        rest = sorted({u[:-1] for u in tuples if u[-1] not in chosen and ranks[u[-1]] <= floor})
        head = _construct(ranks, rest, k - 1, size)
        return None if head is None else head + [top]
    # last target class covers blocks l..k-1: take the highest rank class that
    # is large enough in each of them
    l = k - 1
    while l > 0 and target[l - 1] == target[k - 1]:
        l -= 1
    big = None
    for value in sorted({ranks[v] for v in pools[k - 1]}, reverse=True):
        parts = [[v for v in pools[m] if ranks[v] == value] for m in range(l, k)]
        if all(len(p) >= size for p in parts):
            big = value, parts
            break
    if big is None:
        return None
    value, parts = big
    if l == 0:
        return parts
    rest = sorted({u[:l] for u in tuples if ranks[u[l]] <= value and all(
        sum(1 for v in pools[m] if ranks[v] == ranks[u[m]]) >= size for m in range(l, k))})
    head = _construct(ranks, rest, l, size)
    return None if head is None else head + parts


def _greedy(ranks, k, n, target, size):
    """Exact search: walk the target classes upwards keeping the lowest possible ceiling."""
    blocks = [sorted(range(i * n, (i + 1) * n), key=lambda v: (ranks[v], v)) for i in range(k)]
    sets = [None] * k
    ceiling = -math.inf
    for value in sorted(set(target)):
        members = [i for i in range(k) if target[i] == value]
        if len(members) == 1:
            (i,) = members
            above = [v for v in blocks[i] if ranks[v] > ceiling]
            if len(above) < size:
                return None
            sets[i] = above[:size]
            ceiling = ranks[sets[i][-1]]
            continue
        found = False
        for r in sorted({ranks[v] for v in blocks[members[0]] if ranks[v] > ceiling}):
            parts = [[v for v in blocks[i] if ranks[v] == r] for i in members]
            if all(len(p) >= size for p in parts):
                for i, p in zip(members, parts):
                    sets[i] = p
                ceiling = r
                found = True
                break
        if not found:
            return None
    return sets


def extract_intervals(
    ranks: Sequence[int], k: int, n: int, target: Sequence[int], gamma: float, method: str = "auto"
):
    """Sets ``S_i`` in block ``i`` (elements ``i*n .. i*n+n-1``) of size at least
    ``ceil(gamma * n)`` such that every cross selection has pattern ``target``.

    ``method="proof"`` runs only the inductive construction, ``"exact"`` only
    the exhaustive greedy search; ``"auto"`` tries the construction and falls
    back to the exact search, so ``None`` means no such sets exist.
    """
    ranks = tuple(ranks)
    target = tuple(target)
    if len(ranks) != k * n or len(target) != k:
        raise ValueError("need k blocks of n elements and a length-k target")
    size = max(1, math.ceil(gamma * n - 1e-12))
    result = None
    if method in ("auto", "proof"):
        perm = sorted(range(k), key=lambda i: (target[i], i))
        tuples = [tuple(u[i] for i in perm) for u in good_tuples(ranks, k, n, target)]
        built = _construct(ranks, tuples, k, size)
        if built is not None:
            result = [None] * k
            for slot, i in enumerate(perm):
                result[i] = built[slot]
            if not _realizes(ranks, result, target):
                result = None
    if result is None and method in ("auto", "exact"):
        result = _greedy(ranks, k, n, target, size)
    if result is None:
        return None
    return [tuple(sorted(s)) for s in result]


# --------------------------------------------------------------------------
# pulling a witness back to B


def transfer(
    inst: SilInstance,
    t: TemporalStructure,
    witness: Sequence[int],
    seed: int = 0,
    cap: Optional[int] = None,
):
    """Pick one representative per fiber and inherit its rank; resample bad tuples.

    Returns ranks on ``B`` (validated) or ``None`` once ``cap`` resamplings
    (default ``1000 * |B|``) have not produced a good choice.
    """
    b = inst.source
    n = inst.params.n
    cap = 1000 * b.size if cap is None else cap
    rng = np.random.default_rng(seed)
    rep = [x * n + int(i) for x, i in enumerate(rng.integers(n, size=b.size))]
    refs = b.all_tuples()
    resamples = 0
    while True:
        local = [witness[v] for v in rep]
        bad = next(
            (tup for name, tup in refs if tuple_pattern(local, tup) not in t.allowed[name]),
            None,
        )
        if bad is None:
            break
        if resamples >= cap:
            return None
        resamples += 1
        for x in sorted(set(bad)):
            rep[x] = x * n + int(rng.integers(n))
    ranks = canonical_ranks(witness[v] for v in rep)
    return ranks if is_temporal_witness(b, t, ranks) else None


# --------------------------------------------------------------------------
# trials


@dataclass
class TrialReport:
    rows: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        rows = self.rows
        total = len(rows)

        def rate(key, good):
            known = [r[key] for r in rows if r[key] is not None]
            return (sum(1 for v in known if v == good) / len(known)) if known else None

        return {
            "seeds": total,
            "girth_ok": sum(1 for r in rows if r["girth_ok"]),
            "pi_hom": sum(1 for r in rows if r["pi_hom"]),
            "composition_violations": sum(1 for r in rows if r["composition"] is False),
            "pullback_rate": rate("pullback", True),
            "transfer_rate": rate("transfer", True),
        }


def equivalence_trial(
    b: RelStructure,
    t: TemporalStructure,
    g: int,
    n: int,
    seeds: Sequence[int],
    budget: Optional[int] = 200_000,
) -> TrialReport:
    """Generate one instance per seed and compare CSP membership on both sides.

    Row fields: ``composition`` is direction ``B in CSP(T) => blow-up in CSP(T)``
    (checked through the projection; must never be False); ``pullback`` is the
    converse (None when the blow-up side is unknown or not a member);
    ``transfer`` is whether resampling recovered a witness on ``B``.
    """
    b_witness = temporal_hom_exists(b, t)
    report = TrialReport()
    for seed in seeds:
        params = tsil_parameters(b, g, n=n, seed=seed)
        inst = generate(b, params)
        gi = girth(inst.blown)
        row = {
            "seed": seed,
            "girth": gi,
            "girth_ok": gi is None or gi >= g,
            "sampled": inst.sampled,
            "kept": inst.blown.tuple_count,
            "pi_hom": is_homomorphism(inst.blown, b, inst.projection),
            "b_member": b_witness is not None,
        }
        witness = None
        if b_witness is not None:
            witness = compose_witness(b_witness, inst.projection)
            row["composition"] = is_temporal_witness(inst.blown, t, witness)
        else:
            row["composition"] = None
        try:
            solved = temporal_hom_exists(inst.blown, t, budget=budget)
            row["blown_member"] = solved is not None
        except BudgetExceeded:
            solved = None
            row["blown_member"] = None
        if solved is not None:
            witness = solved
        if row["blown_member"]:
            row["pullback"] = b_witness is not None
        elif row["blown_member"] is None and witness is not None:
            row["blown_member"] = True
            row["pullback"] = True
        else:
            row["pullback"] = None
        if witness is not None:
            row["transfer"] = transfer(inst, t, witness, seed=seed) is not None
        else:
            row["transfer"] = None
        report.rows.append(row)
    return report
