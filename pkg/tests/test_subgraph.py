import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfchart.chart import MINIMAL, Kind, assemble, ro_transform, validate
from surfchart.engine import with_oval
from surfchart.references import FIVE, REFINED, SMALL, golden, golden_names
from surfchart.subgraph import classify_component, closed_curves, components, edge_roles, extract, gamma_type

BLACKS = dict(zip(FIVE, (3, 3, 3, 1, 1, 1, 3, 3, 1)))


def two_rings():
    """A label-1 circle and a label-3 circle meeting at two crossings."""
    es = [("a1", 1, "a1.x", "a1.y"), ("a2", 1, "a2.y", "a2.x"), ("b1", 3, "b1.x", "b1.y"), ("b2", 3, "b2.y", "b2.x")]
    vs = [("x", Kind.CROSSING, ["a1.x", "b1.x", "a2.x", "b2.x"]), ("y", Kind.CROSSING, ["a1.y", "b2.y", "a2.y", "b1.y"])]
    return assemble(4, vs, es)


@pytest.mark.parametrize("name", SMALL + FIVE + REFINED)
def test_reference_classes(name):
    chart = golden(name)
    sub = extract(chart, 1)
    (comp,) = components(sub, chart)
    cls, w, b = classify_component(chart, sub, comp)
    assert cls == chart.meta["class"]
    assert w == len(chart.vertices_of(Kind.WHITE))
    if name in BLACKS:
        assert b == BLACKS[name]


def test_types(golden_name):
    chart = golden(golden_name)
    assert gamma_type(chart, 1) == (len(chart.vertices_of(Kind.WHITE)),)
    assert gamma_type(chart, 2) == ()


def test_type_with_oval():
    assert gamma_type(with_oval(golden("fig12g"), "e1.w1"), 1) == (5, 2)


def test_roles_count_terminals(golden_name):
    chart = golden(golden_name)
    sub = extract(chart, 1)
    roles = edge_roles(sub, chart)
    assert sorted(set(roles.values())) <= ["internal", "terminal"]
    assert list(roles.values()).count("terminal") == len(chart.vertices_of(Kind.BLACK))


def test_middle_arc_per_white(golden_name):
    chart = golden(golden_name)
    sub = extract(chart, 1)
    assert set(sub.middles) == set(sub.whites)


def test_ring_through_crossings():
    chart = two_rings()
    assert validate(chart) == []
    sub = extract(chart, 1)
    (arc,) = sub.arcs
    assert arc.closed and sorted(arc.crossings) == ["x", "y"]
    assert [f.kind for f in closed_curves(sub, chart)] == ["ring"]
    assert components(sub, chart)[0].counts == (0, 0, 2)
    assert gamma_type(chart, 1) == ()
    assert {v.clause for v in validate(chart, MINIMAL)} == {"A4"}


def test_no_loops_in_goldens(golden_name):
    chart = golden(golden_name)
    assert closed_curves(extract(chart, 1), chart) == []


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(golden_names()), st.booleans(), st.booleans())
def test_class_is_ro_invariant(name, reflect, reverse):
    chart = ro_transform(golden(name), reflect, reverse)
    sub = extract(chart, 1)
    (comp,) = components(sub, chart)
    assert classify_component(chart, sub, comp)[0] == golden(name).meta["class"]
