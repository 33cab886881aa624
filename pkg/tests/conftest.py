import itertools
from functools import lru_cache

import pytest

from surfchart.components import Flags, enumerate_components, stub_chart
from surfchart.docio import parse
from surfchart.engine import with_oval
from surfchart.references import golden, golden_names
from surfchart.regions import draw_completion, region_completions

# Three whites on a triangle of label 1, each with a terminal edge pointing
# out of the triangle, so the inner face is a 3-angled disk without feelers.
# The label-2 stub facing the inner face is inward and not middle at every white.
TRIANGLE = """surfchart-document 1
degree 3
name triangle
vertex w1 white a31.w1 w1.s1 a12.w1 w1.s2 t1.w1 w1.s3
vertex w2 white a12.w2 w2.s1 a23.w2 w2.s2 t2.w2 w2.s3
vertex w3 white a23.w3 w3.s1 a31.w3 w3.s2 t3.w3 w3.s3
vertex b1 black t1.b1
vertex b2 black t2.b2
vertex b3 black t3.b3
edge a12 1 a12.w1 a12.w2
edge a23 1 a23.w2 a23.w3
edge a31 1 a31.w3 a31.w1
edge t1 1 t1.w1 t1.b1
edge t2 1 t2.w2 t2.b2
edge t3 1 t3.w3 t3.b3
stub w1.s1 2 in
stub w1.s2 2 out
stub w1.s3 2 in
stub w2.s1 2 in
stub w2.s2 2 out
stub w2.s3 2 in
stub w3.s1 2 in
stub w3.s2 2 out
stub w3.s3 2 in
end
"""
TRIANGLE_FACE = "a12.w1"


def annulus_fixture():
    """The triangle with an oval placed in its inner face, and the annulus between them."""
    chart = with_oval(parse(TRIANGLE), TRIANGLE_FACE)
    near = [e.id for e in chart.edges.values() if e.label <= 2]
    doms = chart.domains(near)
    return chart, doms[chart.domain_of_walk(doms, TRIANGLE_FACE)]


def complete(chart, per_region=2, cap=3):
    """Up to ``cap`` charts with every label-2 stub drawn, no whites added."""
    per = []
    for dom in sorted(chart.domains(), key=lambda d: min(d.walks)):
        r = region_completions(chart, dom, 2, forbid_lens=False, forbid_loop=False, limit=per_region)
        if not r.possible:
            return []
        per.append(r.completions)
    out = []
    for combo in itertools.islice(itertools.product(*per), cap):
        pairs = [p for c in combo for p in c.pairs]
        terms = [t for c in combo for t in c.terminals]
        out.append(draw_completion(chart, pairs, terms))
    return out


@lru_cache(maxsize=None)
def complete_charts():
    """Complete valid charts: completions of the reference and enumerated components."""
    out = []
    for name in golden_names():
        out.extend(complete(golden(name)))
    for w in (2, 3, 4):
        for comp in enumerate_components(w, Flags(no_loop=True, orient=True, minimal_local_rules=False)).values():
            out.extend(complete(stub_chart(comp)))
    return tuple(out)


@pytest.fixture(params=golden_names())
def golden_name(request):
    return request.param
