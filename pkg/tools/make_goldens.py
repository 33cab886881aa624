"""Regenerate the reference chart files under src/surfchart/data/golden.

Each reference graph is written down by hand below: white vertices, directed
label-1 edges, and the direction of the terminal edge at each BW-vertex.
The sphere embedding comes from networkx's planarity test (all reference
graphs have a unique embedding up to reflection once terminals are ignored),
so this script does not depend on the enumerator it is used to check.

Usage: python3 tools/make_goldens.py [outdir]
"""

from __future__ import annotations

import sys
from pathlib import Path

import networkx as nx

from surfchart.chart import IN, OUT
from surfchart.components import AbstractComponent, stub_chart
from surfchart.docio import serialize

# name: (whites, [(edge, tail, head)], {bw_white: terminal direction at white}, meta)
REFERENCES = {
    "fig5a": (2, [("e1", 1, 2), ("e2", 1, 2), ("e3", 2, 1)], {}, {"class": "theta"}),
    "fig5b": (2, [("e1", 1, 2), ("e2", 1, 2)], {1: IN, 2: OUT}, {"class": "oval"}),
    "fig5c": (3, [("e1", 1, 2), ("e2", 2, 1), ("e3", 1, 3), ("e4", 2, 3)], {3: OUT}, {"class": "skew-theta"}),
    # digon w1w2 oriented coherently; path w1-w3-w4-w5-w2 through three BW-vertices
    "fig12a": (5, [("d1", 1, 2), ("d2", 2, 1), ("e1", 3, 1), ("p2", 3, 4), ("p3", 5, 4), ("e2", 5, 2)],
               {3: IN, 4: OUT, 5: IN}, {"class": "fig12a"}),
    "fig12b": (5, [("e1", 1, 4), ("e2", 1, 5), ("e3", 4, 5), ("e4", 2, 4), ("e5", 2, 3), ("e6", 5, 3)],
               {1: IN, 2: IN, 3: OUT}, {"class": "fig12b"}),
    "fig12c": (5, [("e1", 3, 1), ("e2", 1, 4), ("e3", 1, 5), ("e4", 3, 2), ("e5", 2, 4), ("e6", 2, 5)],
               {3: IN, 4: OUT, 5: OUT}, {"class": "fig12c"}),
    "fig12d": (5, [("d1", 1, 2), ("d2", 2, 1), ("e1", 1, 3), ("e2", 2, 4), ("f", 5, 3), ("d3", 4, 5), ("d4", 5, 4)],
               {3: OUT}, {"class": "fig12d"}),
    "fig12e": (5, [("e1", 1, 2), ("e2", 1, 2), ("e3", 3, 1), ("e4", 2, 4), ("e5", 5, 3), ("e6", 5, 4), ("e7", 4, 3)],
               {5: IN}, {"class": "fig12e"}),
    "fig12f": (5, [("e1a", 1, 2), ("e1b", 1, 3), ("e2a", 2, 4), ("e2b", 2, 5), ("e3a", 4, 3), ("e3b", 3, 5), ("e4", 5, 4)],
               {1: IN}, {"class": "fig12f"}),
    "fig12g": (5, [("e1", 1, 2), ("e2", 1, 2), ("e3", 2, 3), ("e4", 3, 4), ("e5", 5, 4), ("e6", 5, 3)],
               {1: IN, 4: OUT, 5: IN}, {"class": "fig12g"}),
    # two digons joined through a BW-vertex; terminals at the far digon vertices
    "fig12h": (5, [("a1", 1, 2), ("a2", 1, 2), ("f1", 2, 3), ("f2", 4, 3), ("b1", 5, 4), ("b2", 5, 4)],
               {1: IN, 3: OUT, 5: IN}, {"class": "fig12h"}),
    "fig12i": (5, [("e1", 1, 2), ("e2", 2, 1), ("e3", 1, 3), ("e4", 2, 3), ("g", 3, 4), ("h1", 4, 5), ("h2", 4, 5)],
               {5: OUT}, {"class": "fig12i"}),
}

# refined panels: graph they refine, and the edges whose direction the panel fixes
REFINED = {
    "fig13a": ("fig12a", None),
    "fig13b": ("fig12b", None),
    "fig13c": ("fig12c", None),
    "fig13d": ("fig12d", ["e1", "e2", "f"]),
    "fig13e": ("fig12e", ["e3", "e5", "e6", "e7"]),
    "fig13f": ("fig12g", None),
    "fig13g": ("fig12h", None),
}


def build(whites, edges, terminals):
    g = nx.Graph()
    ends = {}
    for eid, a, b in edges:
        mid = f"m:{eid}"
        g.add_edge(("w", a), mid)
        g.add_edge(mid, ("w", b))
        ends[eid] = (a, b)
    for w in terminals:
        g.add_edge(("w", w), f"m:t{w}")
        g.add_edge(f"m:t{w}", ("b", w))
    planar, emb = nx.check_planarity(g)
    assert planar
    names = [f"w{i}" for i in range(1, whites + 1)] + [f"b{w}" for w in sorted(terminals)]
    index = {("w", i): i - 1 for i in range(1, whites + 1)}
    index.update({("b", w): whites + k for k, w in enumerate(sorted(terminals))})
    dart = {}
    twin, direction, dname = [], [], {}
    for eid, a, b in edges:
        d = len(twin)
        twin += [d + 1, d]
        direction += [OUT, IN]
        dart[(("w", a), eid)] = d
        dart[(("w", b), eid)] = d + 1
        dname[d] = dname[d + 1] = eid
    for w, sense in sorted(terminals.items()):
        d = len(twin)
        twin += [d + 1, d]
        direction += [sense, IN if sense == OUT else OUT]
        dart[(("w", w), f"t{w}")] = d
        dart[(("b", w), f"t{w}")] = d + 1
        dname[d] = dname[d + 1] = f"t{w}"
    rotation = [None] * len(names)
    for v, i in index.items():
        # networkx lists neighbours clockwise; rotations are counterclockwise
        order = list(reversed(list(emb.neighbors_cw_order(v))))
        rotation[i] = tuple(dart[(v, mid[2:])] for mid in order)
    comp = AbstractComponent(whites, tuple(rotation), tuple(twin), tuple(direction))
    assert comp.is_planar() and not comp.local_violations(), comp.local_violations()
    return comp, names, dname


def main(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    charts = {}
    for name, (whites, edges, terminals, meta) in REFERENCES.items():
        comp, names, dname = build(whites, edges, terminals)
        charts[name] = (comp, names, dname, meta)
    for name, (base, pattern) in REFINED.items():
        comp, names, dname, meta = charts[base]
        meta = dict(meta, refines=base, pattern=",".join(pattern) if pattern else "all")
        charts[name] = (comp, names, dname, meta)
    for name, (comp, names, dname, meta) in charts.items():
        chart = stub_chart(comp, name=name, meta=meta, vertex_names=names, edge_names=dname)
        (outdir / f"{name}.chart").write_text(serialize(chart))


if __name__ == "__main__":
    default = Path(__file__).resolve().parent.parent / "src" / "surfchart" / "data" / "golden"
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else default)
