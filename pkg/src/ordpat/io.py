"""One JSON document format for every artifact, tagged by a ``kind`` field.

Serialization is canonical: keys are sorted and every set-like field
(tuples, edges, hyperedges, patterns) is written in sorted order, so equal
values give byte-identical text.
"""

from __future__ import annotations

import json
import sys
from typing import Any

from .reductions.nae import Hypergraph3
from .reductions.gadgets import ColoredStructure
from .relcore import (
    ColoredGraph,
    Graph,
    InvariantError,
    OrderedGraph,
    RelStructure,
    Signature,
    TemporalStructure,
    is_canonical,
)
from .tsil import SilInstance, SilParams


class ArtifactError(ValueError):
    """A document that cannot be read as an artifact."""


def _sig_doc(sig: Signature) -> list:
    return [[name, arity] for name, arity in sig]


def _sig(doc) -> Signature:
    return Signature(tuple((str(name), int(arity)) for name, arity in doc))


def _edges(g: Graph) -> list:
    return [list(e) for e in g.sorted_edges()]


def to_doc(x: Any) -> dict:
    """The JSON-ready document for an artifact value."""
    if isinstance(x, RelStructure):
        return {
            "kind": "structure",
            "signature": _sig_doc(x.signature),
            "size": x.size,
            "relations": {n: [list(t) for t in x.tuples(n)] for n in x.signature.names},
        }
    if isinstance(x, Graph):
        return {"kind": "graph", "size": x.size, "edges": _edges(x)}
    if isinstance(x, OrderedGraph):
        return {"kind": "ordered_graph", "size": x.size, "edges": _edges(x.graph), "order": list(x.order)}
    if isinstance(x, ColoredGraph):
        return {
            "kind": "colored_graph",
            "size": x.size,
            "edges": _edges(x.graph),
            "palette": list(x.palette),
            "colors": list(x.colors),
        }
    if isinstance(x, ColoredStructure):
        return {"kind": "colored_structure", "structure": to_doc(x.structure), "colors": list(x.colors)}
    if isinstance(x, TemporalStructure):
        return {
            "kind": "temporal",
            "signature": _sig_doc(x.signature),
            "allowed": {n: [list(p) for p in sorted(x.allowed[n])] for n in x.signature.names},
        }
    if isinstance(x, Hypergraph3):
        return {"kind": "hypergraph3", "size": x.size, "hyperedges": [list(e) for e in sorted(x.hyperedges)]}
    if isinstance(x, SilInstance):
        p = x.params
        return {
            "kind": "sil_instance",
            "source": to_doc(x.source),
            "blown": to_doc(x.blown),
            "projection": list(x.projection),
            "sampled": x.sampled,
            "params": {
                "n": p.n,
                "g": p.g,
                "delta": p.delta,
                "delta_max": p.delta_max,
                "p": {str(k): v for k, v in sorted(p.p.items())},
                "seed": p.seed,
                "n_symbolic": p.n_symbolic,
            },
        }
    if isinstance(x, (list, tuple)) and all(
        isinstance(m, (OrderedGraph, ColoredGraph, ColoredStructure)) for m in x
    ):
        return {"kind": "family", "members": [to_doc(m) for m in x]}
    raise TypeError(f"no artifact format for {type(x).__name__}")


def weak_order_doc(ranks) -> dict:
    return {"kind": "weak_order", "ranks": list(ranks)}


def _flat(v) -> bool:
    if v == {} or v == []:
        return True
    return not isinstance(v, (dict, list)) or (
        isinstance(v, list) and all(not isinstance(w, (dict, list)) or (isinstance(w, list) and _flat(w)) for w in v)
    )


def format_doc(doc, indent: int = 0) -> str:
    """Sorted-key JSON with one field per line; lists of scalars (or of
    scalar lists) stay on one line."""
    if _flat(doc):
        return json.dumps(doc, separators=(", ", ": "))
    pad = " " * (indent + 2)
    if isinstance(doc, dict):
        items = [f"{pad}{json.dumps(k)}: {format_doc(doc[k], indent + 2)}" for k in sorted(doc)]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    items = [pad + format_doc(v, indent + 2) for v in doc]
    return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"


def dumps(x: Any) -> str:
    doc = x if isinstance(x, dict) else to_doc(x)
    return format_doc(doc) + "\n"


def _require(doc: dict, *keys):
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ArtifactError(f"{doc.get('kind')}: missing field(s) {', '.join(missing)}")


def from_doc(doc: dict):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ArtifactError("document must be an object with a 'kind' field")
    kind = doc["kind"]
    try:
        if kind == "structure":
            _require(doc, "signature", "size", "relations")
            rels = {n: [tuple(t) for t in ts] for n, ts in doc["relations"].items()}
            return RelStructure(_sig(doc["signature"]), doc["size"], rels)
        if kind in ("graph", "ordered_graph", "colored_graph"):
            _require(doc, "size", "edges")
            g = Graph(doc["size"], frozenset(tuple(e) for e in doc["edges"]))
            if kind == "graph":
                return g
            if kind == "ordered_graph":
                return OrderedGraph(g, tuple(doc.get("order", range(g.size))))
            _require(doc, "palette", "colors")
            return ColoredGraph(g, tuple(doc["colors"]), tuple(doc["palette"]))
        if kind == "colored_structure":
            _require(doc, "structure", "colors")
            return ColoredStructure(from_doc(doc["structure"]), tuple(doc["colors"]))
        if kind == "temporal":
            _require(doc, "signature", "allowed")
            allowed = {n: [tuple(p) for p in ps] for n, ps in doc["allowed"].items()}
            return TemporalStructure(_sig(doc["signature"]), allowed)
        if kind == "hypergraph3":
            _require(doc, "size", "hyperedges")
            return Hypergraph3(doc["size"], frozenset(tuple(e) for e in doc["hyperedges"]))
        if kind == "family":
            _require(doc, "members")
            return [from_doc(m) for m in doc["members"]]
        if kind == "weak_order":
            _require(doc, "ranks")
            ranks = tuple(doc["ranks"])
            if not is_canonical(ranks):
                raise InvariantError(f"ranks {list(ranks)} are not canonical")
            return ranks
        if kind == "sil_instance":
            _require(doc, "source", "blown", "projection", "params")
            p = doc["params"]
            params = SilParams(
                n=p["n"],
                g=p["g"],
                delta=p["delta"],
                delta_max=p["delta_max"],
                p={int(k): v for k, v in p["p"].items()},
                seed=p["seed"],
                n_symbolic=p.get("n_symbolic", ""),
            )
            inst = SilInstance(
                from_doc(doc["source"]),
                from_doc(doc["blown"]),
                tuple(doc["projection"]),
                params,
                doc.get("sampled", 0),
            )
            return inst
    except InvariantError as e:
        raise ArtifactError(f"{kind}: invariant violated: {e}") from e
    except (TypeError, ValueError, KeyError) as e:
        if isinstance(e, ArtifactError):
            raise
        raise ArtifactError(f"{kind}: malformed field: {e}") from e
    raise ArtifactError(f"unknown kind {kind!r}")


def parse_artifact(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ArtifactError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    return from_doc(doc)


def read_artifact(path: str):
    if path == "-":
        return parse_artifact(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_artifact(fh.read())
