"""Command-line entry point: ``ordpat <subcommand> ...``.

Exit status is 0 for YES / success, 1 for NO / failure and 2 for errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import io
from .girth import raise_girth, shortest_cycle
from .patterns import solve_coloring, solve_ordering
from .reductions import (
    graph_to_structure,
    graph_to_temporal_instance,
    minimal_clique,
    nae_to_triangles,
    ordering_family,
    patterns_to_temporal,
    star,
    structure_to_graph,
    triangles_to_nae,
    unstar,
)
from .relcore import (
    BudgetExceeded,
    ColoredGraph,
    Graph,
    OrderedGraph,
    RelStructure,
    Signature,
    Verdict,
    linearize_witness,
    temporal_hom_exists,
)
from . import tsil

EXIT = {"YES": 0, "OK": 0, "NO": 1, "FAIL": 1, "UNKNOWN": 2, "ERROR": 2}


@dataclass
class Report:
    command: str
    status: str
    fields: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)  # name -> document
    rows: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.4g}"
    return "-" if v is None else str(v)


def emit_report(report: Report, fmt: str = "text") -> str:
    """Render a report; ``machine`` gives one JSON document, ``text`` a readable listing."""
    if fmt == "machine":
        doc = {
            "kind": "report",
            "command": report.command,
            "status": report.status,
            "fields": report.fields,
            "artifacts": report.artifacts,
        }
        if report.rows:
            doc["rows"] = report.rows
        return io.format_doc(doc) + "\n"
    lines = [f"{report.command}: {report.status}"]
    for k in sorted(report.fields):
        lines.append(f"  {k}: {_cell(report.fields[k])}")
    if report.rows:
        cols = list(report.rows[0])
        table = [cols] + [[_cell(r[c]) for c in cols] for r in report.rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
        for row in table:
            lines.append("  " + "  ".join(c.rjust(w) for c, w in zip(row, widths)))
    for name in sorted(report.artifacts):
        lines.append(f"--- {name} ---")
        lines.append(io.format_doc(report.artifacts[name]))
    return "\n".join(lines) + "\n"


def _expect(value, kind, what):
    if not isinstance(value, kind):
        raise io.ArtifactError(f"{what}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def _family(path, kind) -> list:
    fam = io.read_artifact(path)
    if not isinstance(fam, list):
        fam = [fam]
    for f in fam:
        _expect(f, kind, "patterns")
    return fam


def _signature(text: str) -> Signature:
    """``R:2,S:3`` -> signature."""
    syms = []
    for part in text.split(","):
        name, _, arity = part.partition(":")
        syms.append((name.strip(), int(arity)))
    return Signature(tuple(syms))


def _seeds(text: str) -> list:
    lo, sep, hi = text.partition("..")
    return list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]


# --------------------------------------------------------------------------
# subcommands


def cmd_solve_ordering(a) -> Report:
    g = _expect(io.read_artifact(a.graph), Graph, "graph")
    fam = _family(a.patterns, OrderedGraph)
    order = solve_ordering(g, fam, induced=a.induced, budget=a.budget)
    if order is None:
        return Report("solve-ordering", "NO")
    return Report(
        "solve-ordering", "YES", {"order": list(order)}, {"witness": io.to_doc(OrderedGraph(g, order))}
    )


def cmd_solve_coloring(a) -> Report:
    g = _expect(io.read_artifact(a.graph), Graph, "graph")
    fam = _family(a.patterns, ColoredGraph)
    palette = tuple(a.palette.split(",")) if a.palette else (fam[0].palette if fam else ())
    colors = solve_coloring(g, palette, fam, budget=a.budget)
    if colors is None:
        return Report("solve-coloring", "NO")
    witness = ColoredGraph(g, colors, palette)
    return Report("solve-coloring", "YES", {"colors": list(colors)}, {"witness": io.to_doc(witness)})


def cmd_solve_temporal(a) -> Report:
    s = _expect(io.read_artifact(a.structure), RelStructure, "structure")
    t = io.read_artifact(a.template)
    w = temporal_hom_exists(s, t, budget=a.budget)
    if w is None:
        return Report("solve-temporal", "NO")
    if a.linear:
        lw = linearize_witness(s, t, w, budget=a.budget)
        if lw is None:
            return Report("solve-temporal", "NO", {"note": "no tie-free witness refines the one found"})
        w = lw
    return Report("solve-temporal", "YES", {"ranks": list(w)}, {"witness": io.weak_order_doc(w)})


def cmd_reduce(a) -> Report:
    name = f"reduce {a.reduction}"
    if a.reduction == "triangles-nae":
        h = triangles_to_nae(_expect(io.read_artifact(a.input), Graph, "graph"))
        return Report(name, "OK", {"hyperedges": len(h.hyperedges)}, {"output": io.to_doc(h)})
    if a.reduction == "nae-triangles":
        g = nae_to_triangles(io.read_artifact(a.input))
        return Report(name, "OK", {"edges": len(g.edges)}, {"output": io.to_doc(g)})
    if a.reduction == "ordering-temporal":
        g = _expect(io.read_artifact(a.input), Graph, "graph")
        fam = _family(a.patterns, OrderedGraph)
        t = patterns_to_temporal(fam)
        s = graph_to_temporal_instance(g, fam)
        return Report(name, "OK", {"tuples": s.tuple_count}, {"template": io.to_doc(t), "instance": io.to_doc(s)})
    if a.reduction == "structure-graph":
        enc = structure_to_graph(_expect(io.read_artifact(a.input), RelStructure, "structure"))
        return Report(name, "OK", {"vertices": enc.graph.size}, {"output": io.to_doc(enc.graph)})
    if a.reduction == "graph-structure":
        g = _expect(io.read_artifact(a.input), Graph, "graph")
        out = graph_to_structure(g, _signature(a.signature))
        if out is Verdict.NO:
            return Report(name, "NO", {"note": "a gadget copy has an extra edge or pendant vertex"})
        return Report(name, "OK", {"roots": list(out.vertices)}, {"output": io.to_doc(out.structure)})
    if a.reduction == "coloring-ordering":
        g = _expect(io.read_artifact(a.input), Graph, "graph")
        fam = _family(a.patterns, ColoredGraph)
        palette = fam[0].palette if fam else ()
        m = a.m or minimal_clique(palette, fam)
        ordered = ordering_family(palette, fam, m)
        return Report(
            name,
            "OK",
            {"m": m, "family_size": len(ordered)},
            {"family": io.to_doc(ordered), "instance": io.to_doc(star(g, len(palette), m))},
        )
    if a.reduction == "unstar":
        if a.m is None:
            raise ValueError("unstar needs --m")
        g = _expect(io.read_artifact(a.input), Graph, "graph")
        out = unstar(g, a.colors, a.m)
        if isinstance(out, Verdict):
            return Report(name, out.value)
        return Report(name, "OK", {"vertices": out.size}, {"output": io.to_doc(out)})
    raise ValueError(f"unknown reduction {a.reduction}")


def cmd_girth(a) -> Report:
    s = io.read_artifact(a.structure)
    if isinstance(s, Graph):
        s = s.as_structure()
    _expect(s, RelStructure, "structure")
    if a.raise_to:
        s = raise_girth(s, a.raise_to)
    c = shortest_cycle(s)
    fields = {"girth": "acyclic" if c is None else c.length}
    if c is not None and a.cycle:
        fields["cycle_elements"] = list(c.elements)
        fields["cycle_tuples"] = [[n, list(t)] for n, t in c.tuples]
    arts = {"output": io.to_doc(s)} if a.raise_to else {}
    return Report("girth", "OK", fields, arts)


def cmd_gen_tsil(a) -> Report:
    b = _expect(io.read_artifact(a.structure), RelStructure, "structure")
    params = tsil.tsil_parameters(b, a.girth, n=a.n, seed=a.seed)
    inst = tsil.generate(b, params)
    doc = io.to_doc(inst)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(doc))
    fields = {
        "n": params.n,
        "delta": params.delta,
        "delta_max": params.delta_max,
        "sampled": inst.sampled,
        "kept": inst.blown.tuple_count,
    }
    return Report("gen-tsil", "OK", fields, {} if a.out else {"instance": doc})


def cmd_verify_tsil(a) -> Report:
    inst = _expect(io.read_artifact(a.instance), tsil.SilInstance, "instance")
    problems = inst.problems()
    fields = {"problems": problems or "none"}
    status = "FAIL" if problems else "OK"
    if a.witness:
        w = io.read_artifact(a.witness)
        delta = a.delta if a.delta is not None else inst.params.delta_max
        bad = tsil.verify_spanning(inst, w, delta, budget=a.budget)
        fields["spanning"] = "ok" if bad is None else f"{bad[0]} {list(bad[1])}: no tuple across {[list(x) for x in bad[2]]}"
        if bad is not None:
            status = "FAIL"
        if a.template and bad is None:
            t = io.read_artifact(a.template)
            back = tsil.transfer(inst, t, w, seed=a.seed)
            fields["transfer"] = "fail" if back is None else list(back)
            if back is None:
                status = "FAIL"
    return Report("verify-tsil", status, fields)


def cmd_trial(a) -> Report:
    b = _expect(io.read_artifact(a.structure), RelStructure, "structure")
    t = io.read_artifact(a.template)
    rep = tsil.equivalence_trial(b, t, a.girth, a.n, _seeds(a.seeds), budget=a.budget or 5000)
    summary = rep.summary
    status = "FAIL" if summary["composition_violations"] or summary["girth_ok"] < summary["seeds"] else "OK"
    return Report("trial", status, summary, rows=rep.rows)


def cmd_fubini(a) -> Report:
    return Report("fubini", "OK", {f"a({i})": tsil.fubini(i) for i in range(a.n + 1)} if a.all else {"value": tsil.fubini(a.n)})


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def globals_(suppress):
        # accepted before or after the subcommand; the later one wins
        c = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        c.add_argument("--seed", type=int, default=d(0))
        c.add_argument("--format", choices=("text", "machine"), default=d("text"))
        c.add_argument("--budget", type=int, default=d(None), help="search node cap")
        return c

    common = globals_(True)
    p = argparse.ArgumentParser(prog="ordpat", parents=[globals_(False)], description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("solve-ordering", cmd_solve_ordering, help="vertex order avoiding ordered patterns")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--patterns", required=True)
    sp.add_argument("--induced", action="store_true")

    sp = add("solve-coloring", cmd_solve_coloring, help="coloring avoiding colored patterns")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--patterns", required=True)
    sp.add_argument("--palette", help="comma-separated colors (default: the patterns' palette)")

    sp = add("solve-temporal", cmd_solve_temporal, help="weak order witnessing a temporal CSP")
    sp.add_argument("--structure", required=True)
    sp.add_argument("--template", required=True)
    sp.add_argument("--linear", action="store_true", help="ask for a tie-free witness")

    sp = add("reduce", cmd_reduce, help="run one of the reductions")
    sp.add_argument(
        "reduction",
        choices=(
            "triangles-nae",
            "nae-triangles",
            "ordering-temporal",
            "structure-graph",
            "graph-structure",
            "coloring-ordering",
            "unstar",
        ),
    )
    sp.add_argument("--input", required=True)
    sp.add_argument("--patterns")
    sp.add_argument("--signature", default="R:2", help="for graph-structure, e.g. R:2,S:3")
    sp.add_argument("--m", type=int, help="complete graph size for coloring-ordering / unstar")
    sp.add_argument("--colors", type=int, default=2, help="palette size for unstar")

    sp = add("girth", cmd_girth, help="girth of a structure")
    sp.add_argument("--structure", required=True)
    sp.add_argument("--cycle", action="store_true", help="also print a shortest cycle")
    sp.add_argument("--raise-to", type=int, help="first delete tuples until girth >= this")

    sp = add("gen-tsil", cmd_gen_tsil, help="sample a sparse high-girth blow-up")
    sp.add_argument("--structure", required=True)
    sp.add_argument("--girth", type=int, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--out")

    sp = add("verify-tsil", cmd_verify_tsil, help="check an instance (and a witness on it)")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--witness", help="weak order on the blow-up")
    sp.add_argument("--delta", type=float)
    sp.add_argument("--template", help="also pull the witness back to the source")

    sp = add("trial", cmd_trial, help="compare CSP membership over many seeds")
    sp.add_argument("--structure", required=True)
    sp.add_argument("--template", required=True)
    sp.add_argument("--girth", type=int, default=3)
    sp.add_argument("--n", type=int, default=16)
    sp.add_argument("--seeds", default="0..9", help="a..b inclusive")

    sp = add("fubini", cmd_fubini, help="number of weak orders")
    sp.add_argument("n", type=int)
    sp.add_argument("--all", action="store_true", help="print a(0) .. a(n)")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        report = a.fn(a)
    except BudgetExceeded as e:
        report = Report(a.command, "UNKNOWN", {"error": str(e)})
    except (ValueError, OSError, KeyError) as e:
        report = Report(a.command, "ERROR", {"error": str(e)})
    sys.stdout.write(emit_report(report, a.format))
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
