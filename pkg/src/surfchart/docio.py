"""Line-oriented text format for charts.

Example::

    surfchart-document 1
    degree 3
    name theta
    vertex w1 white a1 s1 a2 s2 a3 s3
    vertex w2 white b1 t1 b3 t3 b2 t2
    edge e1 1 a1 b1
    stub s1 2 in
    hoop h1 2
    place h1:0 a1
    outer a1
    end

Records are whitespace separated; ``#`` starts a comment.  ``edge`` lists
the tail dart then the head dart.  ``hoop`` takes an optional side hint.
``place`` glues a face of one component into a face of another.
"""

from __future__ import annotations

import math
import re
from typing import Iterable

from surfchart.chart import Chart, ChartError, Kind, Placement, Stub, assemble

MAGIC = "surfchart-document"
VERSION = 1
_TOKEN = re.compile(r"\S+")


class DocumentError(ChartError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def _tokens(line: str) -> list[tuple[str, int]]:
    body = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]


def parse(text: str) -> Chart:
    lines = text.splitlines()
    records = [(no, _tokens(raw)) for no, raw in enumerate(lines, 1)]
    records = [(no, toks) for no, toks in records if toks]
    if not records:
        raise DocumentError("empty document", 1, 1)
    no, toks = records[0]
    if toks[0][0] != MAGIC or len(toks) != 2:
        raise DocumentError(f"expected '{MAGIC} <version>'", no, toks[0][1])
    if toks[1][0] != str(VERSION):
        raise DocumentError(f"unknown version {toks[1][0]!r}", no, toks[1][1])

    degree = None
    name = ""
    meta: dict[str, str] = {}
    vertices, edges, stubs, places = [], [], [], []
    outer = None
    ended = False

    def need(toks, count, no, usage):
        if len(toks) != count:
            col = toks[min(len(toks), count) - 1][1] if toks else 1
            raise DocumentError(f"expected '{usage}'", no, col)

    for no, toks in records[1:]:
        if ended:
            raise DocumentError("content after 'end'", no, toks[0][1])
        word = toks[0][0]
        vals = [t for t, _ in toks]
        if word == "degree":
            need(toks, 2, no, "degree <n>")
            degree = _int(toks[1], no)
        elif word == "name":
            name = " ".join(vals[1:])
        elif word == "meta":
            if len(toks) < 2:
                raise DocumentError("expected 'meta <key> <value>'", no, toks[0][1])
            meta[vals[1]] = " ".join(vals[2:])
        elif word == "vertex":
            if len(toks) < 4:
                raise DocumentError("expected 'vertex <id> <kind> <darts...>'", no, toks[0][1])
            if vals[2] not in {k.value for k in Kind}:
                raise DocumentError(f"unknown vertex kind {vals[2]!r}", no, toks[2][1])
            vertices.append((vals[1], vals[2], vals[3:]))
        elif word == "edge":
            need(toks, 5, no, "edge <id> <label> <tail> <head>")
            edges.append((vals[1], _int(toks[2], no), vals[3], vals[4]))
        elif word == "hoop":
            if len(toks) not in (3, 4):
                raise DocumentError("expected 'hoop <id> <label> [hint]'", no, toks[0][1])
            edges.append((vals[1], _int(toks[2], no), None, None, vals[3] if len(vals) > 3 else None))
        elif word == "stub":
            need(toks, 4, no, "stub <dart> <label> <in|out>")
            if vals[3] not in ("in", "out"):
                raise DocumentError(f"bad direction {vals[3]!r}", no, toks[3][1])
            stubs.append(Stub(vals[1], _int(toks[2], no), vals[3]))
        elif word == "place":
            need(toks, 3, no, "place <inner-face> <host-face>")
            places.append(Placement(vals[1], vals[2]))
        elif word == "outer":
            need(toks, 2, no, "outer <face>")
            outer = vals[1]
        elif word == "end":
            need(toks, 1, no, "end")
            ended = True
        else:
            raise DocumentError(f"unknown record {word!r}", no, toks[0][1])
    if not ended:
        last = len(lines) if lines else 1
        raise DocumentError("truncated document: missing 'end'", last, 1)
    if degree is None:
        raise DocumentError("missing 'degree' record", records[0][0], 1)
    try:
        chart = assemble(
            degree, vertices, edges, stubs=stubs, placements=places, outer_face=outer,
            name=name, meta=meta, strict=False,
        )
        for p in chart.placements:
            chart.face_key(p.inner), chart.face_key(p.host)
        if outer is not None:
            chart.face_key(outer)
    except DocumentError:
        raise
    except ChartError as exc:
        raise DocumentError(str(exc)) from exc
    return chart


def _int(tok: tuple[str, int], no: int) -> int:
    try:
        return int(tok[0])
    except ValueError:
        raise DocumentError(f"expected an integer, got {tok[0]!r}", no, tok[1]) from None


def serialize(chart: Chart) -> str:
    out = [f"{MAGIC} {VERSION}", f"degree {chart.degree}"]
    if chart.name:
        out.append(f"name {chart.name}")
    for k in sorted(chart.meta):
        out.append(f"meta {k} {chart.meta[k]}".rstrip())
    for vid in sorted(chart.vertices):
        v = chart.vertices[vid]
        out.append(f"vertex {vid} {v.kind.value} {' '.join(v.rotation)}")
    for eid in sorted(chart.edges):
        e = chart.edges[eid]
        if e.closed:
            out.append(f"hoop {eid} {e.label}" + (f" {e.side_hint}" if e.side_hint else ""))
        else:
            out.append(f"edge {eid} {e.label} {e.tail} {e.head}")
    for s in sorted(chart.stubs, key=lambda d: d.id):
        out.append(f"stub {s.id} {s.label} {s.direction}")
    for p in chart.placements:
        out.append(f"place {p.inner} {p.host}")
    if chart.outer_face is not None:
        out.append(f"outer {chart.outer_face}")
    out.append("end")
    return "\n".join(out) + "\n"


def canonicalize(text: str) -> str:
    return serialize(parse(text))


# -- diagrams -------------------------------------------------------------------


def _collapsible(chart: Chart) -> tuple[set[str], set[str], dict[str, str]]:
    """Black vertices and terminal edges hidden by the BW convention."""
    hidden_v, hidden_e, dotted = set(), set(), {}
    for e in chart.edges.values():
        if e.closed:
            continue
        a, b = chart.darts[e.tail].vertex, chart.darts[e.head].vertex
        kinds = (chart.vertices[a].kind, chart.vertices[b].kind)
        if kinds == (Kind.WHITE, Kind.BLACK) or kinds == (Kind.BLACK, Kind.WHITE):
            black, white = (b, a) if kinds[1] == Kind.BLACK else (a, b)
            hidden_v.add(black)
            hidden_e.add(e.id)
            dotted[white] = e.id
    return hidden_v, hidden_e, dotted


def _visible(chart: Chart, collapse_bw: bool):
    hidden_v, hidden_e, dotted = _collapsible(chart) if collapse_bw else (set(), set(), {})
    verts = [v for v in sorted(chart.vertices) if v not in hidden_v]
    edges = [e for e in sorted(chart.edges) if e not in hidden_e]
    return verts, edges, dotted


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(chart: Chart, *, collapse_bw: bool = False) -> str:
    verts, edges, dotted = _visible(chart, collapse_bw)
    name = chart.name or "chart"
    out = [f"digraph {_quote(name)} {{"]
    shape = {Kind.WHITE: "circle", Kind.BLACK: "point", Kind.CROSSING: "plaintext"}
    for vid in verts:
        v = chart.vertices[vid]
        attrs = [f"shape={shape[v.kind]}", f"label={_quote(vid)}"]
        if vid in dotted:
            attrs.append("style=filled fillcolor=gray")
        out.append(f"  {_quote(vid)} [{' '.join(attrs)}];")
    for eid in edges:
        e = chart.edges[eid]
        if e.closed:
            node = f"hoop:{eid}"
            out.append(f"  {_quote(node)} [shape=none label={_quote(f'{eid} ({e.label})')}];")
            continue
        a, b = chart.darts[e.tail].vertex, chart.darts[e.head].vertex
        out.append(f"  {_quote(a)} -> {_quote(b)} [label={_quote(f'{eid}:{e.label}')}];")
    out.append("}")
    return "\n".join(out) + "\n"


def emit_svg(chart: Chart, *, collapse_bw: bool = False, size: int = 400) -> str:
    """Circular layout; straight segments with an arrow marker at the head."""
    verts, edges, dotted = _visible(chart, collapse_bw)
    c = size / 2
    r = size / 2 - 40
    pos = {}
    for i, vid in enumerate(verts):
        t = 2 * math.pi * i / max(len(verts), 1)
        pos[vid] = (round(c + r * math.cos(t), 2), round(c + r * math.sin(t), 2))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto">'
        '<path d="M0,0 L10,5 L0,10 z"/></marker></defs>',
    ]
    pair_count: dict[tuple[str, str], int] = {}
    for eid in edges:
        e = chart.edges[eid]
        if e.closed:
            continue
        a, b = chart.darts[e.tail].vertex, chart.darts[e.head].vertex
        key = (min(a, b), max(a, b))
        k = pair_count.get(key, 0)
        pair_count[key] = k + 1
        (x1, y1), (x2, y2) = pos[a], pos[b]
        # parallel edges bend alternately to either side
        bend = (k + 1) // 2 * (1 if k % 2 else -1) * 25
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        norm = math.hypot(dx, dy) or 1.0
        qx, qy = round(mx - dy / norm * bend, 2), round(my + dx / norm * bend, 2)
        out.append(
            f'<path d="M{x1},{y1} Q{qx},{qy} {x2},{y2}" fill="none" stroke="black" marker-end="url(#arrow)">'
            f"<title>{eid}:{e.label}</title></path>"
        )
        out.append(f'<text x="{qx}" y="{qy}" font-size="10">{e.label}</text>')
    for vid in verts:
        x, y = pos[vid]
        kind = chart.vertices[vid].kind
        if kind == Kind.BLACK:
            out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="black"/>')
        elif kind == Kind.CROSSING:
            out.append(f'<rect x="{x - 3}" y="{y - 3}" width="6" height="6" fill="gray"/>')
        else:
            fill = "gray" if vid in dotted else "white"
            out.append(f'<circle cx="{x}" cy="{y}" r="8" fill="{fill}" stroke="black"/>')
        out.append(f'<text x="{x + 10}" y="{y - 10}" font-size="11">{vid}</text>')
    hoops = [eid for eid in edges if chart.edges[eid].closed]
    for i, eid in enumerate(hoops):
        out.append(f'<text x="5" y="{15 + 12 * i}" font-size="10">hoop {eid} ({chart.edges[eid].label})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_diagram(chart: Chart, fmt: str, *, collapse_bw: bool = False) -> str:
    if fmt == "dot":
        return emit_dot(chart, collapse_bw=collapse_bw)
    if fmt == "svg":
        return emit_svg(chart, collapse_bw=collapse_bw)
    raise ValueError(f"unsupported diagram format {fmt!r}")


def read_chart(path) -> Chart:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_chart(chart: Chart, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(chart))


__all__: Iterable[str] = [
    "DocumentError", "canonicalize", "emit_diagram", "emit_dot", "emit_svg", "parse", "read_chart",
    "serialize", "write_chart",
]
