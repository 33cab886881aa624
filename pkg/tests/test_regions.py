import re

import pytest
from conftest import TRIANGLE, annulus_fixture, complete, complete_charts
from hypothesis import given, settings
from hypothesis import strategies as st
from test_subgraph import two_rings

from surfchart.chart import ChartError
from surfchart.docio import parse
from surfchart.references import golden, golden_names
from surfchart.regions import (
    BoundaryDart,
    BoundaryLabelError,
    boundary_darts,
    boundary_orientation,
    detect_lenses,
    find_angled_disks,
    io_balance,
    local_complexity,
    min_white_lower_bound,
    oval_template,
    realizable,
    region_completions,
    region_of,
)


def test_annulus_counts_five_in_two_out():
    chart, region = annulus_fixture()
    sheet = io_balance(chart, region, 2)
    assert (sheet.inward, sheet.outward) == (5, 2)
    assert (sheet.forced_inward, sheet.forced_outward) == (5, 2)
    assert not sheet.balanced and not sheet.can_balance
    assert min_white_lower_bound(chart, region, 2) == 1


def test_annulus_stays_unbalanced_under_any_flip():
    # reversing the triangle's stubs one at a time never balances the count
    chart, region = annulus_fixture()
    for dart in ("w1.s1", "w2.s1", "w3.s1"):
        sheet = io_balance(chart, region, 2, {dart: "out"})
        assert (sheet.inward, sheet.outward) == (4, 3)
        assert not sheet.balanced


def test_triangle_face_alone_is_unbalanced():
    chart = parse(TRIANGLE)
    sheet = io_balance(chart, region_of(chart, "a12.w1"), 2)
    assert (sheet.inward, sheet.outward) == (3, 0)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_complete_charts_balance(data):
    charts = complete_charts()
    chart = data.draw(st.sampled_from(charts))
    k = data.draw(st.integers(1, chart.degree - 1))
    near = sorted(e.id for e in chart.edges.values() if abs(e.label - k) <= 1)
    cut = data.draw(st.lists(st.sampled_from(near), unique=True)) if near else []
    for region in chart.domains(cut):
        assert io_balance(chart, region, k).balanced


def test_complete_charts_exist_and_are_valid():
    from surfchart.chart import validate

    charts = complete_charts()
    assert len(charts) >= 5
    for c in charts:
        assert validate(c) == [] and not c.stubs


def test_far_label_on_boundary_raises():
    chart = two_rings()
    label3 = [e.id for e in chart.edges.values() if e.label == 3]
    region = chart.domains(label3)[0]
    with pytest.raises(BoundaryLabelError):
        io_balance(chart, region, 1)


def test_theta_completes_only_with_lenses():
    chart = golden("fig5a")
    for dom in chart.domains():
        assert region_completions(chart, dom, 2, forbid_lens=False).possible
    blocked = [d for d in chart.domains() if not region_completions(chart, d, 2).possible]
    assert blocked
    report = region_completions(chart, blocked[0], 2)
    assert "lens" in report.reason()


def test_lenses_found_in_drawn_theta():
    for drawn in complete(golden("fig5a")):
        lenses = detect_lenses(drawn, 1)
        assert lenses
        assert all(lens.condition in ("(i)", "(ii)") for lens in lenses)


def test_no_lenses_without_upper_edges(golden_name):
    assert detect_lenses(golden(golden_name), 1) == []


def test_three_walk_region_rejected():
    from surfchart.docio import serialize
    from surfchart.engine import oval_chart, with_oval

    second = parse(re.sub(r"(?<!\w)o(?=[bdt]?\d)", "q", serialize(oval_chart())))
    chart = with_oval(with_oval(golden("fig12g"), "e1.w1"), "e1.w1", second)
    doms = chart.domains([e.id for e in chart.edges.values() if e.label == 1])
    big = max(doms, key=lambda d: len(d.walks))
    with pytest.raises(ChartError):
        region_completions(chart, big, 2)


def test_fig12a_disks():
    chart = golden("fig12a")
    disks = find_angled_disks(chart, 1)
    assert sorted(d.k for d in disks) == [2, 2, 5, 5, 5, 5]
    digons = [d for d in disks if d.k == 2]
    assert {d.special for d in digons} == {True, False}
    assert all(boundary_orientation(chart, d) == "coherent" for d in digons)
    # the plain digon's outer side holds the other three whites
    inner = sorted(local_complexity(chart, d).interior_whites for d in disks)
    assert inner == [0, 0, 0, 0, 0, 3]
    assert all(local_complexity(chart, d).boundary_crossings == 0 for d in disks)


def test_disks_come_in_side_pairs(golden_name):
    disks = find_angled_disks(golden(golden_name), 1)
    sides = {}
    for d in disks:
        sides.setdefault(d.boundary, []).append(d)
    assert all(len(v) == 2 for v in sides.values())


def bd(walk, pos, direction="in"):
    return BoundaryDart(f"d{walk}.{pos}", "v", walk, pos, direction, False)


def test_realizable_disk():
    assert realizable([(bd(0, 0), bd(0, 1)), (bd(0, 2), bd(0, 3))], [4])
    assert not realizable([(bd(0, 0), bd(0, 2)), (bd(0, 1), bd(0, 3))], [4])


def test_realizable_annulus():
    # two arcs across an annulus never cross, whatever the offsets
    assert realizable([(bd(0, 0), bd(1, 0)), (bd(0, 2), bd(1, 3))], [4, 4])
    # a chord on the outer walk separating a crossing arc's end from the other
    assert not realizable([(bd(0, 0), bd(1, 0)), (bd(0, 1), bd(0, 3)), (bd(0, 2), bd(1, 2))], [4, 4])


def test_oval_template():
    assert (oval_template(4).label, oval_template(4).sign) == (4, 1)
    assert (oval_template(4, upper=True).label, oval_template(4, upper=True).sign) == (5, -1)


@pytest.mark.parametrize("name", golden_names())
def test_boundary_darts_are_stubs(name):
    chart = golden(name)
    for dom in chart.domains():
        for b in boundary_darts(chart, dom, 2):
            assert chart.is_stub(b.dart)
