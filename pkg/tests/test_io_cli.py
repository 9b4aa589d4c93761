import json

import pytest
from hypothesis import given, settings, strategies as st

from ordpat import io
from ordpat.cli import Report, emit_report, main
from ordpat.reductions import ColoredStructure, Hypergraph3
from ordpat.relcore import ANY, ColoredGraph, Graph, OrderedGraph, RelStructure, Signature, TemporalStructure
from ordpat.tsil import generate, tsil_parameters

R2 = Signature((("R", 2),))
SIG = Signature((("R", 2), ("T", 3)))


structures = st.integers(1, 5).flatmap(
    lambda n: st.builds(
        lambda e, t: RelStructure(SIG, n, {"R": e, "T": t}),
        st.sets(st.tuples(*[st.integers(0, n - 1)] * 2), max_size=5),
        st.sets(st.tuples(*[st.integers(0, n - 1)] * 3), max_size=5),
    )
)
graphs = st.integers(2, 6).flatmap(
    lambda n: st.builds(
        lambda e: Graph(n, frozenset(tuple(sorted(p)) for p in e if p[0] != p[1])),
        st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8),
    )
)


@settings(max_examples=80, deadline=None)
@given(structures)
def test_structure_round_trip(s):
    text = io.dumps(s)
    assert io.parse_artifact(text) == s
    assert io.dumps(io.parse_artifact(text)) == text


@settings(max_examples=80, deadline=None)
@given(graphs, st.data())
def test_graph_kinds_round_trip(g, data):
    order = tuple(data.draw(st.permutations(range(g.size))))
    colors = tuple(data.draw(st.lists(st.sampled_from(["r", "b", None]), min_size=g.size, max_size=g.size)))
    for x in (g, OrderedGraph(g, order), ColoredGraph(g, colors, ("r", "b"))):
        assert io.parse_artifact(io.dumps(x)) == x


def test_other_kinds_round_trip():
    t = TemporalStructure(R2, {"R": {(1, 2), (1, 1)}})
    h = Hypergraph3(4, frozenset({(0, 1, 2), (1, 2, 3)}))
    cs = ColoredStructure(RelStructure(R2, 2, {"R": [(0, 1)]}), ("r", "b"))
    fam = [OrderedGraph(Graph.path(3)), OrderedGraph(Graph.complete(2))]
    for x in (t, h, cs, fam):
        assert io.parse_artifact(io.dumps(x)) == x
    b = RelStructure(R2, 3, {"R": [(0, 1), (1, 2)]})
    inst = generate(b, tsil_parameters(b, 3, n=4, seed=2))
    back = io.parse_artifact(io.dumps(inst))
    assert back.blown == inst.blown and back.projection == inst.projection and back.params.p == inst.params.p
    assert io.parse_artifact(io.dumps(io.weak_order_doc((2, 1, 2)))) == (2, 1, 2)


def test_serialization_is_canonical():
    a = RelStructure(R2, 3, {"R": [(2, 0), (0, 1)]})
    b = RelStructure(R2, 3, {"R": [(0, 1), (2, 0)]})
    assert io.dumps(a) == io.dumps(b)
    assert io.dumps(Graph(3, frozenset({(1, 2), (0, 1)}))) == io.dumps(Graph(3, frozenset({(0, 1), (1, 2)})))


@pytest.mark.parametrize(
    "text, needle",
    [
        ('{"kind": "structure", "signature": [["R", 2]], "size": 2, "relations": {"R": [[0, 5]]}}', "(0, 5)"),
        ('{"kind": "structure", "signature": [["R", 2]], "size": 2, "relations": {"R": [[0, 1], [0, 1]]}}', "duplicate"),
        ('{"kind": "graph", "size": 2, "edges": [[0, 0]]}', "loop"),
        ('{"kind": "graph",\n  "size": 2,,}', "line 2"),
        ('{"kind": "nothing"}', "unknown kind"),
        ('{"size": 2}', "kind"),
        ('{"kind": "graph", "size": 2}', "edges"),
        ('{"kind": "weak_order", "ranks": [1, 3]}', "canonical"),
    ],
)
def test_parse_errors(text, needle):
    with pytest.raises(io.ArtifactError, match=needle.replace("(", r"\(").replace(")", r"\)")):
        io.parse_artifact(text)


# --- reports and CLI -------------------------------------------------------------


def test_emit_report_shapes():
    yes = Report("x", "YES", {"order": [0, 1]}, {"witness": {"kind": "weak_order", "ranks": [1, 2]}})
    assert "--- witness ---" in emit_report(yes) and yes.exit_code == 0
    no = Report("x", "NO")
    assert no.exit_code == 1
    rows = Report("trial", "OK", {"seeds": 2}, rows=[{"seed": 0, "ok": True}, {"seed": 1, "ok": None}])
    doc = json.loads(emit_report(rows, "machine"))
    assert doc["rows"][1]["ok"] is None and doc["fields"]["seeds"] == 2
    assert "seed" in emit_report(rows)


def write(tmp_path, name, value):
    p = tmp_path / name
    p.write_text(io.dumps(value))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cli_solvers(tmp_path, capsys):
    k3 = write(tmp_path, "k3.json", Graph.complete(3))
    p3 = write(tmp_path, "p3.json", [OrderedGraph(Graph.path(3))])
    code, out = run(capsys, "solve-ordering", "--graph", k3, "--patterns", p3)
    assert code == 1 and "NO" in out
    path = write(tmp_path, "path.json", Graph.path(3))
    code, out = run(capsys, "--format", "machine", "solve-ordering", "--graph", path, "--patterns", p3)
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "YES" and doc["artifacts"]["witness"]["kind"] == "ordered_graph"

    mono = write(tmp_path, "mono.json", [ColoredGraph(Graph.complete(3), (c,) * 3, ("r", "b")) for c in "rb"])
    k4 = write(tmp_path, "k4.json", Graph.complete(4))
    k5 = write(tmp_path, "k5.json", Graph.complete(5))
    assert run(capsys, "solve-coloring", "--graph", k4, "--patterns", mono)[0] == 0
    assert run(capsys, "solve-coloring", "--graph", k5, "--patterns", mono)[0] == 1

    s = write(tmp_path, "s.json", RelStructure(R2, 3, {"R": [(0, 1), (1, 2), (2, 0)]}))
    strict = write(tmp_path, "t.json", TemporalStructure(R2, {"R": {(1, 2)}}))
    loose = write(tmp_path, "t2.json", TemporalStructure(R2, {"R": {(1, 2), (2, 1)}}))
    assert run(capsys, "solve-temporal", "--structure", s, "--template", strict)[0] == 1
    code, out = run(capsys, "solve-temporal", "--structure", s, "--template", loose, "--linear")
    assert code == 0 and "weak_order" in out


def test_cli_reduce(tmp_path, capsys):
    k4 = write(tmp_path, "k4.json", Graph.complete(4))
    code, out = run(capsys, "--format", "machine", "reduce", "triangles-nae", "--input", k4)
    h = io.from_doc(json.loads(out)["artifacts"]["output"])
    assert code == 0 and len(h.hyperedges) == 4
    bad = write(tmp_path, "h.json", Hypergraph3(4, frozenset({(0, 1, 2), (0, 1, 3)})))
    assert run(capsys, "reduce", "nae-triangles", "--input", bad)[0] == 2
    t = write(tmp_path, "t.json", RelStructure(R2, 2, {"R": [(0, 1)]}))
    code, out = run(capsys, "--format", "machine", "reduce", "structure-graph", "--input", t)
    g = write(tmp_path, "g.json", io.from_doc(json.loads(out)["artifacts"]["output"]))
    code, out = run(capsys, "--format", "machine", "reduce", "graph-structure", "--input", g, "--signature", "R:2")
    assert io.from_doc(json.loads(out)["artifacts"]["output"]).tuple_count == 1
    p = write(tmp_path, "p.json", [OrderedGraph(Graph.path(3))])
    code, out = run(capsys, "--format", "machine", "reduce", "ordering-temporal", "--input", k4, "--patterns", p)
    assert set(json.loads(out)["artifacts"]) == {"template", "instance"}
    mono = write(tmp_path, "mono.json", [ColoredGraph(Graph.complete(3), (c,) * 3, ("r", "b")) for c in "rb"])
    code, out = run(capsys, "--format", "machine", "reduce", "coloring-ordering", "--input", k4, "--patterns", mono)
    doc = json.loads(out)
    assert doc["fields"]["m"] == 5 and doc["artifacts"]["instance"]["size"] == 9
    starred = write(tmp_path, "st.json", io.from_doc(doc["artifacts"]["instance"]))
    code, out = run(capsys, "--format", "machine", "reduce", "unstar", "--input", starred, "--m", "5")
    assert io.from_doc(json.loads(out)["artifacts"]["output"]) == Graph.complete(4)


def test_cli_girth_tsil(tmp_path, capsys):
    tri = write(tmp_path, "tri.json", RelStructure(R2, 3, {"R": [(0, 1), (1, 2), (2, 0)]}))
    code, out = run(capsys, "girth", "--structure", tri, "--cycle")
    assert code == 0 and "girth: 3" in out and "cycle_tuples" in out
    code, out = run(capsys, "girth", "--structure", tri, "--raise-to", "4")
    assert "acyclic" in out
    inst = str(tmp_path / "inst.json")
    args = ("gen-tsil", "--structure", tri, "--girth", "3", "--n", "8", "--seed", "5", "--out", inst)
    assert run(capsys, *args)[0] == 0
    first = open(inst).read()
    run(capsys, *args)
    assert open(inst).read() == first  # same seed, same bytes
    assert run(capsys, "verify-tsil", "--instance", inst)[0] == 0
    t = write(tmp_path, "t.json", TemporalStructure(R2, {"R": {(1, 1), (1, 2)}}))
    code, out = run(capsys, "--format", "machine", "trial", "--structure", tri, "--template", t, "--n", "8", "--seeds", "0..2")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 3 and doc["fields"]["composition_violations"] == 0
    code, out = run(capsys, "fubini", "4")
    assert code == 0 and "75" in out
    assert run(capsys, "fubini", "13")[0] == 2
    assert run(capsys, "girth", "--structure", str(tmp_path / "missing.json"))[0] == 2
