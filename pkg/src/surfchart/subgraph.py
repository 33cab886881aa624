"""The label-m subgraph of a chart.

Edges of the subgraph are *arcs*: maximal label-m paths through crossings.
At a crossing the label-m path continues along the opposite dart, so a
crossing never joins two components.  An arc is named after the first
chart edge it traverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from surfchart.chart import IN, OUT, Chart, ChartError, Kind, _UnionFind

FREE, TERMINAL, INTERNAL, HOOP = "free", "terminal", "internal", "hoop"


@dataclass(frozen=True)
class Arc:
    """A smoothed label-m edge.

    ``start``/``end`` are darts at white or black vertices (``None`` for a
    closed arc).  The arc runs from the ``start`` dart to the ``end`` dart
    in the direction of its chart edges, so ``start`` is an outward dart.
    """

    id: str
    edges: tuple[str, ...]
    start: str | None
    end: str | None
    crossings: tuple[str, ...]

    @property
    def closed(self) -> bool:
        return self.start is None


@dataclass(frozen=True)
class LabelSubgraph:
    label: int
    arcs: tuple[Arc, ...]
    whites: tuple[str, ...]
    blacks: tuple[str, ...]
    middles: dict[str, str]
    crossings: tuple[str, ...]

    def arc(self, arc_id: str) -> Arc:
        for a in self.arcs:
            if a.id == arc_id:
                return a
        raise KeyError(arc_id)


@dataclass(frozen=True)
class SubComponent:
    arcs: tuple[str, ...]
    whites: tuple[str, ...]
    blacks: tuple[str, ...]
    crossings: int

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.whites), len(self.blacks), self.crossings


@dataclass(frozen=True)
class ClosedCurveFeature:
    kind: str
    carrier: tuple[str, ...]


def _opposite(chart: Chart, dart: str) -> str:
    rot = chart.vertices[chart.darts[dart].vertex].rotation
    return rot[(rot.index(dart) + 2) % 4]


def extract(chart: Chart, m: int) -> LabelSubgraph:
    if not 1 <= m < chart.degree:
        raise ChartError(f"label {m} out of range for a {chart.degree}-chart")
    arcs: list[Arc] = []
    used: set[str] = set()

    def ends(eid: str) -> tuple[str, str]:
        e = chart.edges[eid]
        return e.tail, e.head

    def is_crossing(dart: str) -> bool:
        return chart.vertices[chart.darts[dart].vertex].kind == Kind.CROSSING

    def trace_forward(eid: str) -> tuple[list[str], list[str], str]:
        path, xs = [eid], []
        head = ends(eid)[1]
        while is_crossing(head):
            xs.append(chart.darts[head].vertex)
            nxt = chart.edges[chart.darts[_opposite(chart, head)].edge]
            if nxt.id == path[0]:
                return path, xs, ""
            path.append(nxt.id)
            head = nxt.head
        return path, xs, head

    label_edges = sorted(e.id for e in chart.edges.values() if e.label == m)
    for eid in label_edges:
        if eid in used:
            continue
        e = chart.edges[eid]
        if e.closed:
            used.add(eid)
            arcs.append(Arc(eid, (eid,), None, None, ()))
            continue
        # walk backwards to the start of the arc
        first = eid
        tail = e.tail
        back: list[str] = []
        closed = False
        while is_crossing(tail):
            prev = chart.edges[chart.darts[_opposite(chart, tail)].edge]
            if prev.id == eid:
                closed = True
                break
            back.append(prev.id)
            first, tail = prev.id, prev.tail
        path, xs, head = trace_forward(first)
        used.update(path)
        if closed or head == "":
            arcs.append(Arc(min(path), tuple(path), None, None, tuple(xs)))
        else:
            arcs.append(Arc(first, tuple(path), chart.edges[first].tail, head, tuple(xs)))

    whites, blacks = set(), set()
    for a in arcs:
        for d in (a.start, a.end):
            if d is None:
                continue
            v = chart.vertices[chart.darts[d].vertex]
            (whites if v.kind == Kind.WHITE else blacks).add(v.id)
    middles = {}
    for v in whites:
        mark = chart.middle_marks.get(v)
        if mark is None:
            continue
        for d in (mark.inward, mark.outward):
            if chart.darts[d].label == m:
                middles[v] = d
    xs = sorted({x for a in arcs for x in a.crossings})
    return LabelSubgraph(m, tuple(arcs), tuple(sorted(whites)), tuple(sorted(blacks)), middles, tuple(xs))


def _endpoints(chart: Chart, arc: Arc) -> tuple[str, str] | None:
    if arc.closed:
        return None
    return chart.darts[arc.start].vertex, chart.darts[arc.end].vertex


def components(sub: LabelSubgraph, chart: Chart) -> list[SubComponent]:
    """Connected components; closed arcs are components of their own."""
    uf = _UnionFind([a.id for a in sub.arcs])
    at_vertex: dict[str, str] = {}
    for a in sub.arcs:
        ends = _endpoints(chart, a)
        if ends is None:
            continue
        for v in ends:
            if v in at_vertex:
                uf.union(a.id, at_vertex[v])
            else:
                at_vertex[v] = a.id
    out = []
    for group in uf.groups():
        arcs = sorted(group)
        verts = set()
        xs = set()
        for aid in arcs:
            a = sub.arc(aid)
            xs.update(a.crossings)
            ends = _endpoints(chart, a)
            if ends:
                verts.update(ends)
        whites = tuple(sorted(v for v in verts if chart.vertices[v].kind == Kind.WHITE))
        blacks = tuple(sorted(v for v in verts if chart.vertices[v].kind == Kind.BLACK))
        out.append(SubComponent(tuple(arcs), whites, blacks, len(xs)))
    return sorted(out, key=lambda c: (-len(c.whites), c.arcs))


def edge_roles(sub: LabelSubgraph, chart: Chart) -> dict[str, str]:
    """Role of every arc.  Closed arcs (with or without crossings) are hoops."""
    roles = {}
    for a in sub.arcs:
        ends = _endpoints(chart, a)
        if ends is None:
            roles[a.id] = HOOP
            continue
        black = sum(chart.vertices[v].kind == Kind.BLACK for v in ends)
        roles[a.id] = (INTERNAL, TERMINAL, FREE)[black]
    return roles


def closed_curves(sub: LabelSubgraph, chart: Chart) -> list[ClosedCurveFeature]:
    out = []
    simple = {carrier for kind, carrier, _ in _sides(chart, sub) if kind == "simple-hoop"}
    for a in sub.arcs:
        if a.closed and not a.crossings:
            out.append(ClosedCurveFeature("simple-hoop" if a.id in simple else HOOP, (a.id,)))
        elif a.closed:
            out.append(ClosedCurveFeature("ring", a.edges))
        else:
            s, t = _endpoints(chart, a)
            if s == t and chart.vertices[s].kind == Kind.WHITE:
                out.append(ClosedCurveFeature("loop", a.edges))
    return out


def _sides(chart: Chart, sub: LabelSubgraph):
    for a in sub.arcs:
        if not a.closed:
            continue
        doms = chart.domains(a.edges)
        sides = [d.vertices for d in doms]
        if a.crossings:
            yield "ring", a.edges, sides
        else:
            lonely = any(chart.white_count(s) == 0 for s in sides)
            yield ("simple-hoop" if lonely else HOOP), a.id, sides


def closed_curve_sides(chart: Chart) -> Iterable[tuple[str, str | tuple[str, ...], list[frozenset[str]]]]:
    """Hoops and rings of every label with the vertex sets of their sides."""
    labels = sorted({e.label for e in chart.edges.values()})
    for m in labels:
        yield from _sides(chart, extract(chart, m))


def gamma_type(chart: Chart, m: int) -> tuple[int, ...]:
    sub = extract(chart, m)
    counts = [len(c.whites) for c in components(sub, chart) if c.whites]
    return tuple(sorted(counts, reverse=True))


# -- classification ---------------------------------------------------------------


def to_abstract(chart: Chart, sub: LabelSubgraph, comp: SubComponent):
    """The component as an oriented :class:`AbstractComponent` (crossings smoothed)."""
    from surfchart.components import AbstractComponent

    order = list(comp.whites) + list(comp.blacks)
    index = {v: i for i, v in enumerate(order)}
    dart_no: dict[str, int] = {}
    twin: dict[int, int] = {}
    direction: dict[int, str] = {}
    names = {}
    for aid in comp.arcs:
        a = sub.arc(aid)
        if a.closed:
            raise ChartError("closed arcs have no abstract component")
        s, t = len(dart_no), len(dart_no) + 1
        dart_no[a.start], dart_no[a.end] = s, t
        twin[s], twin[t] = t, s
        direction[s], direction[t] = OUT, IN
        names[s] = names[t] = aid
    rotation = []
    for v in order:
        rot = [d for d in chart.vertices[v].rotation if d in dart_no]
        rotation.append(tuple(dart_no[d] for d in rot))
    n = len(dart_no)
    return AbstractComponent(
        whites=len(comp.whites),
        rotation=tuple(rotation),
        twin=tuple(twin[i] for i in range(n)),
        direction=tuple(direction[i] for i in range(n)),
        names=tuple(names[i] for i in range(n)),
    )


def classify_component(chart: Chart, sub: LabelSubgraph, comp: SubComponent) -> tuple[str, int, int]:
    """(class name, white count, black count) against the reference graphs."""
    from surfchart.components import canonical_code
    from surfchart.references import reference_codes

    w, b = len(comp.whites), len(comp.blacks)
    if any(sub.arc(a).closed for a in comp.arcs):
        return "other", w, b
    ab = to_abstract(chart, sub, comp)
    if ab.has_loop():
        return "other", w, b
    code = canonical_code(ab, oriented=False)
    for name, ref in reference_codes().items():
        if ref == code:
            return name, w, b
    return "other", w, b


__all__ = [
    "Arc",
    "ClosedCurveFeature",
    "FREE",
    "HOOP",
    "INTERNAL",
    "LabelSubgraph",
    "SubComponent",
    "TERMINAL",
    "classify_component",
    "closed_curve_sides",
    "closed_curves",
    "components",
    "edge_roles",
    "extract",
    "gamma_type",
    "to_abstract",
]
