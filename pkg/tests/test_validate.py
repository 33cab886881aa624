import networkx as nx
import pytest
from conftest import TRIANGLE
from hypothesis import given, settings
from hypothesis import strategies as st

from surfchart.chart import AXIOMS, MINIMAL, ChartError, Kind, assemble, ro_transform, validate
from surfchart.docio import parse, serialize
from surfchart.references import golden, golden_names, golden_text
from surfchart.subgraph import gamma_type


def mutants(text):
    """(kind, line, mutated document) for every single-step mutation of a chart document."""
    lines = text.splitlines()

    def swap(i, line):
        return "\n".join(lines[:i] + [line] + lines[i + 1:]) + "\n"

    for i, line in enumerate(lines):
        p = line.split()
        if p[0] == "stub":
            yield "flip", i, swap(i, " ".join(p[:3] + ["out" if p[3] == "in" else "in"]))
            yield "label", i, swap(i, " ".join(p[:2] + [str(int(p[2]) + 1), p[3]]))
        elif p[0] == "edge":
            yield "flip", i, swap(i, " ".join(p[:3] + [p[4], p[3]] + p[5:]))
            yield "label", i, swap(i, " ".join(p[:2] + [str(int(p[2]) + 1)] + p[3:]))
        elif p[0] == "vertex" and p[2] == "white":
            rot = p[3:]
            rot[0], rot[1] = rot[1], rot[0]
            yield "rotation", i, swap(i, " ".join(p[:3] + rot))


def test_goldens_valid_in_both_modes(golden_name):
    chart = golden(golden_name)
    assert validate(chart, AXIOMS) == []
    assert validate(chart, MINIMAL) == []


@pytest.mark.parametrize("kind", ["flip", "label", "rotation"])
def test_every_mutant_is_caught(golden_name, kind):
    found = [(i, validate(parse(t))) for k, i, t in mutants(golden_text(golden_name)) if k == kind]
    assert found
    assert all(v for _, v in found), [i for i, v in found if not v]


def test_face_count_agrees_with_networkx(golden_name):
    # independent planarity oracle: faces of the label graph with stubs dropped
    chart = golden(golden_name)
    g = nx.MultiGraph()
    g.add_nodes_from(chart.vertices)
    for e in chart.edges.values():
        g.add_edge(chart.darts[e.tail].vertex, chart.darts[e.head].vertex)
    assert nx.check_planarity(g)[0]
    v, e = g.number_of_nodes(), g.number_of_edges()
    assert v - e + len(chart.face_walks) == 2


def test_euler_holds(golden_name):
    golden(golden_name).check_euler()


def test_swapped_edges_give_a_torus():
    text = golden_text("fig5a")
    line = next(ln for ln in text.splitlines() if ln.startswith("vertex w1"))
    p = line.split()
    rot = p[3:]
    rot[0], rot[2] = rot[2], rot[0]
    chart = parse(text.replace(line, " ".join(p[:3] + rot)))
    with pytest.raises(ChartError, match="V-E\\+F = 0"):
        chart.check_euler()
    assert "embedding" in {v.clause for v in validate(chart)}


def test_terminal_without_middle_arc_is_a2():
    # the triangle fixture's terminals sit at the end of the outward window
    chart = parse(TRIANGLE)
    assert validate(chart, AXIOMS) == []
    found = validate(chart, MINIMAL)
    assert {(v.clause, v.where) for v in found} == {("A2", "t1"), ("A2", "t2"), ("A2", "t3")}


def test_free_edge_is_a3():
    chart = assemble(3, [("b1", Kind.BLACK, ["f.b1"]), ("b2", Kind.BLACK, ["f.b2"])],
                     [("f", 1, "f.b1", "f.b2")])
    assert validate(chart, AXIOMS) == []
    assert [v.clause for v in validate(chart, MINIMAL)] == ["A3"]


def test_label_out_of_range():
    text = golden_text("fig5b").replace("stub w1.s1 2", "stub w1.s1 3")
    assert any(v.clause == "(ii)" for v in validate(parse(text)))


def test_duplicate_dart_rejected():
    with pytest.raises(ChartError):
        assemble(3, [("b1", Kind.BLACK, ["x"]), ("b2", Kind.BLACK, ["x"])], [("f", 1, "x", "x")])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(golden_names()), st.booleans(), st.booleans())
def test_ro_transform_preserves_validity_and_type(name, reflect, reverse):
    chart = golden(name)
    moved = ro_transform(chart, reflect, reverse)
    assert validate(moved) == []
    assert gamma_type(moved, 1) == gamma_type(chart, 1)
    assert len(moved.face_walks) == len(chart.face_walks)
    back = ro_transform(moved, reflect, reverse)
    assert serialize(back) == serialize(chart)
