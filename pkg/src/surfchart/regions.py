"""Regions of a label subgraph: angled disks, lenses, and IO counting.

A *region* is a :class:`~surfchart.chart.Domain`: a union of chart faces.
Its boundary is one walk (a disk) or two walks (an annulus, when a second
component is placed inside a face).  The central tool is
:func:`region_completions`, which lists every way to finish the label-k
darts on the boundary with no white vertex inside: stubs are joined in
(out, in) pairs by non-crossing arcs, and a middle stub may instead end at
a black vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from surfchart.chart import IN, OUT, Chart, ChartError, Domain, Kind

COHERENT, MIXED = "coherent", "mixed"


class BoundaryLabelError(ChartError):
    """The region boundary carries labels incompatible with the requested count."""


@dataclass(frozen=True)
class BoundaryDart:
    dart: str
    vertex: str
    walk: int
    position: int
    direction: str
    middle: bool


@dataclass(frozen=True)
class Completion:
    """Arcs (tail stub, head stub) and stubs ending at black vertices."""

    pairs: tuple[tuple[str, str], ...]
    terminals: tuple[str, ...]


@dataclass(frozen=True)
class IOBalanceSheet:
    label: int
    inward: int
    outward: int
    forced_inward: int
    forced_outward: int
    free_middles: tuple[str, ...] = ()

    @property
    def balanced(self) -> bool:
        return self.inward == self.outward

    @property
    def can_balance(self) -> bool:
        """Whether dropping some middle darts (as terminal edges) can even the count."""
        return max(self.forced_inward, self.forced_outward) <= min(self.inward, self.outward)


@dataclass(frozen=True)
class LocalComplexity:
    interior_whites: int
    boundary_crossings: int


# -- region boundaries ---------------------------------------------------------------


def region_walks(chart: Chart, region: Domain) -> list[tuple[str, ...]]:
    """Non-empty boundary walks of a region in a fixed order."""
    return [chart.face_walks[k] for k in sorted(region.walks) if chart.face_walks[k]]


def boundary_darts(chart: Chart, region: Domain, label: int) -> list[BoundaryDart]:
    """Label-``label`` stubs on the boundary of the region, in walk order."""
    out = []
    for wi, walk in enumerate(region_walks(chart, region)):
        for pos, d in enumerate(walk):
            dart = chart.darts[d]
            if dart.edge is None and dart.label == label:
                out.append(BoundaryDart(d, dart.vertex, wi, pos, dart.direction, chart.is_middle(d)))
    return out


def region_of(chart: Chart, key: str, regions: Sequence[Domain] | None = None) -> Domain:
    regions = chart.domains() if regions is None else regions
    return regions[chart.domain_of_walk(regions, key)]


# -- IO calculation ---------------------------------------------------------------


def io_balance(chart: Chart, region: Domain, label: int, fixed: dict[str, str] | None = None) -> IOBalanceSheet:
    """Count label-``label`` darts entering ``region``.

    Open darts (stubs) are counted with their direction, overridden by
    ``fixed``.  A stub that is not middle cannot end at a black vertex, so
    it is *forced*: it must be paired inside the region.  Edges of the
    label already drawn inside the region contribute one inward and one
    outward end and are not counted.  The boundary may only carry labels
    ``label - 1``, ``label`` and ``label + 1``; anything else raises
    :class:`BoundaryLabelError`.
    """
    fixed = fixed or {}
    inside = set(region.walks)
    for e in chart.edges.values():
        if e.closed or abs(e.label - label) <= 1:
            continue
        sides = {chart.walk_of[e.tail] in inside, chart.walk_of[e.head] in inside}
        if sides == {True, False}:
            raise BoundaryLabelError(f"edge {e.id} of label {e.label} lies on the boundary of a label-{label} region")
    ins = outs = f_in = f_out = 0
    middles = []
    for b in boundary_darts(chart, region, label):
        direction = fixed.get(b.dart, b.direction)
        if direction == IN:
            ins += 1
            f_in += not b.middle
        else:
            outs += 1
            f_out += not b.middle
        if b.middle:
            middles.append(b.dart)
    for v in region.vertices:
        # vertices strictly inside the region: their label darts are counted
        # individually; a complete chart balances them edge by edge
        vert = chart.vertices[v]
        for d in vert.rotation:
            dart = chart.darts[d]
            if dart.label != label:
                continue
            if dart.edge is None:
                direction = fixed.get(d, dart.direction)
                ins += direction == IN
                outs += direction == OUT
    return IOBalanceSheet(label, ins, outs, f_in, f_out, tuple(middles))


def io_witness(sheet: IOBalanceSheet) -> str:
    return (
        f"label {sheet.label}: {sheet.inward} inward vs {sheet.outward} outward "
        f"({sheet.forced_inward} in / {sheet.forced_outward} out cannot end at black vertices)"
    )


# -- completions ---------------------------------------------------------------------


def _crossing(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (p, q), (r, s) = sorted(a), sorted(b)
    return p < r < q < s or r < p < s < q


def _noncrossing(chords: Iterable[tuple[int, int]]) -> bool:
    chords = list(chords)
    return not any(_crossing(a, b) for a, b in itertools.combinations(chords, 2))


def realizable(pairs: Sequence[tuple[BoundaryDart, BoundaryDart]], lengths: Sequence[int]) -> bool:
    """Whether arcs joining these boundary darts can be drawn disjointly.

    ``lengths`` are the lengths of the boundary walks.  For a disk this is
    the usual non-crossing condition on the boundary order.  For an annulus
    with an arc between the two boundaries we cut along that arc; the
    result is a disk whose boundary runs once around each walk, starting
    just after the ends of the cut.
    """
    cross = [p for p in pairs if p[0].walk != p[1].walk]
    if not cross:
        for w in {b.walk for p in pairs for b in p}:
            chords = [(a.position, b.position) for a, b in pairs if a.walk == w]
            if not _noncrossing(chords):
                return False
        return True
    cut = min(cross, key=lambda p: (p[0].walk, p[0].position, p[1].position))
    o, i = (cut[0], cut[1]) if cut[0].walk == 0 else (cut[1], cut[0])

    def key(b: BoundaryDart) -> int:
        if b.walk == 0:
            return (b.position - o.position) % lengths[0]
        return lengths[0] + (b.position - i.position) % lengths[1]

    chords = [(key(a), key(b)) for a, b in pairs if (a, b) != cut]
    return _noncrossing(chords)


def _lens_with(chart: Chart, label: int, c1: str, c2: str, middle: dict[str, bool]) -> str | None:
    """The label-m edge forming a lens with a new label-``label`` arc c1-c2, if any."""
    w1, w2 = chart.darts[c1].vertex, chart.darts[c2].vertex
    if w1 == w2:
        return None
    for e in chart.edges.values():
        if e.closed or e.label not in (label - 1, label + 1):
            continue
        ends = {chart.darts[e.tail].vertex: e.tail, chart.darts[e.head].vertex: e.head}
        if set(ends) != {w1, w2}:
            continue
        if any(chart.vertices[v].kind != Kind.WHITE for v in ends):
            continue
        a1, b1 = ends[w1], ends[w2]
        if not (
            (chart.succ(c1) == a1 and chart.succ(b1) == c2) or (chart.succ(a1) == c1 and chart.succ(c2) == b1)
        ):
            continue
        e1_mid = (chart.is_middle(a1), chart.is_middle(b1))
        e2_mid = (middle[c1], middle[c2])
        if not any(e1_mid) and not any(e2_mid):
            return e.id
        if all(e1_mid) or all(e2_mid):
            return e.id
    return None


def _arc_lens(chart: Chart, label: int, tail: str, head: str) -> str | None:
    middle = {tail: chart.is_middle(tail), head: chart.is_middle(head)}
    return _lens_with(chart, label, tail, head, middle)


@dataclass
class RegionReport:
    """Completions of one region, with the reasons candidates were dropped."""

    completions: list[Completion]
    sheet: IOBalanceSheet
    rejected: dict[str, int] = field(default_factory=dict)
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def possible(self) -> bool:
        return bool(self.completions)

    def reason(self) -> str:
        if self.completions:
            return "completable"
        if not self.rejected:
            return "io-imbalance: " + io_witness(self.sheet)
        parts = []
        for k in sorted(self.rejected):
            w = self.witnesses.get(k)
            parts.append(f"{k} x{self.rejected[k]}" + (f" ({w})" if w else ""))
        return "every pairing fails: " + ", ".join(parts)


def region_completions(
    chart: Chart,
    region: Domain,
    label: int,
    *,
    forbid_lens: bool = True,
    forbid_loop: bool = True,
    limit: int | None = None,
) -> RegionReport:
    """All white-free completions of the label-``label`` stubs of a region.

    The region must have no white vertex strictly inside (vertices inside
    are ignored apart from their darts, which would need their own region).
    """
    stubs = boundary_darts(chart, region, label)
    sheet = io_balance(chart, region, label)
    report = RegionReport([], sheet)
    if len(region_walks(chart, region)) > 2:
        raise ChartError("regions with more than two boundary walks are not supported")
    lens_cache: dict[tuple[str, str], str | None] = {}

    def reject(kind: str, witness: str = "") -> None:
        report.rejected[kind] = report.rejected.get(kind, 0) + 1
        if witness and kind not in report.witnesses:
            report.witnesses[kind] = witness

    def pairings(rest: list[BoundaryDart]) -> Iterator[tuple[list[tuple[BoundaryDart, BoundaryDart]], list[str]]]:
        if not rest:
            yield [], []
            return
        first, others = rest[0], rest[1:]
        if first.middle:
            for pairs, terms in pairings(others):
                yield pairs, [first.dart] + terms
        for k, other in enumerate(others):
            if other.direction == first.direction:
                continue
            tail, head = (first, other) if first.direction == OUT else (other, first)
            if forbid_loop and first.vertex == other.vertex:
                reject("loop", f"{tail.dart}->{head.dart} at {first.vertex}")
                continue
            if forbid_lens:
                key = (tail.dart, head.dart)
                if key not in lens_cache:
                    lens_cache[key] = _arc_lens(chart, label, tail.dart, head.dart)
                if lens_cache[key] is not None:
                    reject("lens", f"{tail.dart}->{head.dart} with {lens_cache[key]}")
                    continue
            remaining = others[:k] + others[k + 1 :]
            for pairs, terms in pairings(remaining):
                yield [(tail, head)] + pairs, terms

    lengths = [len(w) for w in region_walks(chart, region)]
    for pairs, terms in pairings(stubs):
        if not realizable(pairs, lengths):
            reject("crossing")
            continue
        report.completions.append(
            Completion(tuple(sorted((a.dart, b.dart) for a, b in pairs)), tuple(sorted(terms)))
        )
        if limit is not None and len(report.completions) >= limit:
            break
    return report


def draw_completion(
    chart: Chart,
    pairs: Iterable[tuple[str, str]],
    terminals: Iterable[str] = (),
    *,
    names: dict[str, str] | None = None,
    host: str | None = None,
) -> Chart:
    """The chart with the given arcs drawn and terminal stubs capped by black vertices.

    An arc (tail, head) becomes an edge named ``names[tail]`` (default
    ``x<i>``).  Placements whose inner component got joined to its host are
    dropped; ``host`` re-targets the remaining placements to a new face.
    """
    from surfchart.chart import Placement, Stub, assemble, specs_of

    names = names or {}
    vs, es, st = specs_of(chart)
    pairs, terminals = list(pairs), list(terminals)
    used = {d for p in pairs for d in p} | set(terminals)
    labels = {d: chart.darts[d].label for d in used}
    stubs = [s for s in st if s.dart not in used]
    for i, (tail, head) in enumerate(pairs, 1):
        es.append((names.get(tail, f"x{i}"), labels[tail], tail, head))
    for i, d in enumerate(terminals, 1):
        eid = names.get(d, f"y{i}")
        black = f"k{i}"
        end = f"{eid}.{black}"
        vs.append((black, "black", [end]))
        if chart.darts[d].direction == OUT:
            es.append((eid, labels[d], d, end))
        else:
            es.append((eid, labels[d], end, d))
    out = assemble(chart.degree, vs, es, stubs=stubs, name=chart.name, meta=chart.meta)
    kept = []
    for p in chart.placements:
        comp = {c for c in out.components if chart.darts[p.inner].vertex in c} if p.inner in chart.darts else set()
        target = host or p.host
        joined = any(target in out.darts and out.darts[target].vertex in c for c in comp)
        if not joined:
            kept.append(Placement(p.inner, target))
    if kept:
        out = assemble(chart.degree, vs, es, stubs=stubs, placements=kept, name=chart.name, meta=chart.meta)
    return out


def min_white_lower_bound(chart: Chart, region: Domain, label: int, **flags) -> int:
    """0 if the region has a white-free completion, else 1."""
    return 0 if region_completions(chart, region, label, limit=1, **flags).possible else 1


# -- angled disks -------------------------------------------------------------------


@dataclass(frozen=True)
class AngledDisk:
    label: int
    k: int
    boundary: tuple[str, ...]
    region: Domain
    whites: tuple[str, ...]
    feelers: tuple[str, ...]
    special: bool
    crossings_on_boundary: int
    walk: tuple[tuple[str, str], ...]

    @property
    def feeler_count(self) -> int:
        return len(self.feelers)


def _smoothed_graph(chart: Chart, m: int):
    from surfchart.subgraph import extract

    sub = extract(chart, m)
    adj: dict[str, list[tuple[str, str, str, str]]] = {}
    for a in sub.arcs:
        if a.closed:
            continue
        u, v = chart.darts[a.start].vertex, chart.darts[a.end].vertex
        if chart.vertices[u].kind != Kind.WHITE or chart.vertices[v].kind != Kind.WHITE:
            continue
        adj.setdefault(u, []).append((v, a.id, a.start, a.end))
        adj.setdefault(v, []).append((u, a.id, a.end, a.start))
    return sub, adj


def _simple_cycles(adj) -> Iterator[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Simple cycles (vertices, arcs) of the white-vertex multigraph, each once."""
    verts = sorted(adj)
    seen: set[frozenset[str]] = set()
    for start in verts:

        def dfs(v, path_v, path_a):
            for (u, aid, _, _) in sorted(adj[v]):
                if aid in path_a:
                    continue
                if u == start and len(path_a) >= 1:
                    arcs = path_a + [aid]
                    if len(arcs) >= 2 and frozenset(arcs) not in seen:
                        seen.add(frozenset(arcs))
                        yield tuple(path_v), tuple(arcs)
                    continue
                if u in path_v or u < start:
                    continue
                yield from dfs(u, path_v + [u], path_a + [aid])

        yield from dfs(start, [start], [])


def find_angled_disks(chart: Chart, m: int) -> list[AngledDisk]:
    """Both sides of every simple cycle of label-m arcs through white vertices."""
    sub, adj = _smoothed_graph(chart, m)
    roles = None
    from surfchart.subgraph import edge_roles

    roles = edge_roles(sub, chart)
    out = []
    for verts, arcs in _simple_cycles(adj):
        edges = [e for aid in arcs for e in sub.arc(aid).edges]
        doms = chart.domains(edges)
        xs = sum(len(sub.arc(a).crossings) for a in arcs)
        for dom in doms:
            if not any(chart.face_walks[k] for k in dom.walks):
                continue
            feelers = []
            side_faces = dom.walks
            for v in verts:
                for d in chart.vertices[v].rotation:
                    dart = chart.darts[d]
                    if dart.label != m or dart.edge is None:
                        continue
                    arc_id = _arc_of(sub, d)
                    if arc_id in arcs:
                        continue
                    # the dart leaves v into this side iff its corner lies in the side
                    if chart.walk_of[d] in side_faces:
                        feelers.append(arc_id)
            feelers = sorted(set(feelers))
            special = all(roles[f] == "terminal" for f in feelers)
            walk = tuple((a, v) for a, v in zip(arcs, verts))
            out.append(
                AngledDisk(m, len(verts), tuple(arcs), dom, tuple(verts), tuple(feelers), special, xs, walk)
            )
    return out


def _arc_of(sub, dart: str) -> str:
    for a in sub.arcs:
        if dart in (a.start, a.end):
            return a.id
    raise KeyError(dart)


def boundary_orientation(chart: Chart, disk: AngledDisk) -> str:
    """``coherent`` if the boundary arcs run head-to-tail around the cycle."""
    from surfchart.subgraph import extract

    sub = extract(chart, disk.label)
    verts = list(disk.whites)
    senses = []
    for i, aid in enumerate(disk.boundary):
        a = sub.arc(aid)
        here, there = verts[i], verts[(i + 1) % len(verts)]
        tail_v, head_v = chart.darts[a.start].vertex, chart.darts[a.end].vertex
        if (tail_v, head_v) == (here, there):
            senses.append(True)
        elif (tail_v, head_v) == (there, here):
            senses.append(False)
        else:
            raise ChartError(f"arc {aid} does not join {here} and {there}")
    return COHERENT if all(senses) or not any(senses) else MIXED


def local_complexity(chart: Chart, disk: AngledDisk) -> LocalComplexity:
    from surfchart.subgraph import extract

    sub = extract(chart, disk.label)
    xs = {x for aid in disk.boundary for x in sub.arc(aid).crossings}
    return LocalComplexity(chart.white_count(disk.region.vertices), len(xs))


# -- lenses -----------------------------------------------------------------------


@dataclass(frozen=True)
class Lens:
    label: int
    lower: str
    upper: str
    whites: tuple[str, str]
    condition: str


def detect_lenses(chart: Chart, m: int) -> list[Lens]:
    """Lenses of type (m, m+1) formed by drawn edges."""
    out = []
    for e2 in sorted(chart.edges.values(), key=lambda e: e.id):
        if e2.closed or e2.label != m + 1:
            continue
        ends = [chart.darts[e2.tail].vertex, chart.darts[e2.head].vertex]
        if any(chart.vertices[v].kind != Kind.WHITE for v in ends) or ends[0] == ends[1]:
            continue
        e1 = _lens_with(
            chart, m + 1, e2.tail, e2.head, {e2.tail: chart.is_middle(e2.tail), e2.head: chart.is_middle(e2.head)}
        )
        if e1 is None or chart.edges[e1].label != m:
            continue
        mids = [chart.edge_middle_at(x, v) for x in (e1, e2.id) for v in ends]
        cond = "(i)" if not any(mids) else "(ii)"
        out.append(Lens(m, e1, e2.id, (ends[0], ends[1]), cond))
    return out


# -- templates ----------------------------------------------------------------------


@dataclass(frozen=True)
class PseudoChartTemplate:
    """A small named pattern with a sign and the label it is bound to."""

    template: str
    sign: int
    label: int

    def __post_init__(self):
        if self.template not in {"fig3a", "fig3b", "fig9a", "fig9b", "oval"}:
            raise ValueError(f"unknown template {self.template!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


def oval_template(m: int, upper: bool = False) -> PseudoChartTemplate:
    """The oval pattern bound to label m (sign +1) or to label m+1 (sign -1)."""
    return PseudoChartTemplate("oval", -1 if upper else 1, m + 1 if upper else m)
