"""Charts on the 2-sphere as combinatorial maps.

A chart is stored as a rotation system: every vertex lists its darts in
counterclockwise order, every open edge owns a tail dart (oriented outward
at its vertex) and a head dart (oriented inward).  Closed edges without
vertices (hoops) own no darts.

Darts may also be *stubs*: short arcs at a vertex whose edge has not been
decided yet.  Stubs carry their own label and direction and behave like
pendant half-edges for face tracing.  Partial configurations built by the
case engine are ordinary charts with stubs.

Disconnected charts need nesting data that the rotation system cannot
carry.  Every connected component after the first is placed by a
:class:`Placement`: one of its own faces is glued to a face of another
component.  Faces are named by *face keys*: a dart id names the face walk
that leaves along that dart, and ``"<hoop>:0"`` / ``"<hoop>:1"`` name the
two sides of a hoop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

IN = "in"
OUT = "out"


class Kind(str, Enum):
    BLACK = "black"
    WHITE = "white"
    CROSSING = "crossing"


DEGREE = {Kind.BLACK: 1, Kind.CROSSING: 4, Kind.WHITE: 6}


class ChartError(ValueError):
    """Inconsistent vertex/edge specs."""


class EmbeddingError(ChartError):
    """Rotation system is not a sphere embedding."""


def flip(direction: str) -> str:
    return OUT if direction == IN else IN


@dataclass(frozen=True)
class Dart:
    id: str
    edge: str | None
    vertex: str
    direction: str
    label: int


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: Kind
    rotation: tuple[str, ...]


@dataclass(frozen=True)
class Edge:
    id: str
    label: int
    tail: str | None = None
    head: str | None = None
    # hoop only: free-form face-side hint carried through serialization
    side_hint: str | None = None

    @property
    def closed(self) -> bool:
        return self.tail is None


@dataclass(frozen=True)
class Placement:
    """Glue face ``inner`` of one component into face ``host`` of another."""

    inner: str
    host: str


@dataclass(frozen=True)
class Stub:
    dart: str
    label: int
    direction: str


@dataclass(frozen=True)
class MiddleMark:
    vertex: str
    inward: str
    outward: str


@dataclass(frozen=True, order=True)
class Complexity:
    white_count: int
    neg_free_count: int


@dataclass(frozen=True)
class Domain:
    """A connected piece of S^2 minus a subgraph.

    ``walks`` are the face keys of the chart faces merged into the domain,
    ``vertices`` the chart vertices lying strictly inside it.
    """

    walks: frozenset[str]
    vertices: frozenset[str]


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[frozenset[str]]:
        out: dict[str, set[str]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return sorted((frozenset(g) for g in out.values()), key=lambda g: min(g))


@dataclass(frozen=True)
class Chart:
    degree: int
    vertices: dict[str, Vertex]
    edges: dict[str, Edge]
    darts: dict[str, Dart]
    placements: tuple[Placement, ...] = ()
    outer_face: str | None = None
    name: str = ""
    meta: dict[str, str] = field(default_factory=dict)

    # -- basic permutations -------------------------------------------------

    @cached_property
    def _succ(self) -> dict[str, str]:
        succ = {}
        for v in self.vertices.values():
            rot = v.rotation
            for i, d in enumerate(rot):
                succ[d] = rot[(i + 1) % len(rot)]
        return succ

    @cached_property
    def _pred(self) -> dict[str, str]:
        return {b: a for a, b in self._succ.items()}

    @cached_property
    def _twin(self) -> dict[str, str]:
        twin = {}
        for e in self.edges.values():
            if not e.closed:
                twin[e.tail] = e.head
                twin[e.head] = e.tail
        for d in self.darts.values():
            if d.edge is None:
                twin[d.id] = d.id
        return twin

    def succ(self, dart: str) -> str:
        return self._succ[dart]

    def pred(self, dart: str) -> str:
        return self._pred[dart]

    def twin(self, dart: str) -> str:
        return self._twin[dart]

    def other_end(self, edge: str, vertex: str) -> str | None:
        e = self.edges[edge]
        if self.darts[e.tail].vertex == vertex:
            return self.darts[e.head].vertex
        return self.darts[e.tail].vertex

    def is_stub(self, dart: str) -> bool:
        return self.darts[dart].edge is None

    @property
    def stubs(self) -> list[Dart]:
        return [d for d in self.darts.values() if d.edge is None]

    def vertices_of(self, kind: Kind) -> list[str]:
        return sorted(v.id for v in self.vertices.values() if v.kind == kind)

    @property
    def hoops(self) -> list[str]:
        return sorted(e.id for e in self.edges.values() if e.closed)

    def labels_at(self, vertex: str) -> list[int]:
        return [self.darts[d].label for d in self.vertices[vertex].rotation]

    def directions_at(self, vertex: str) -> list[str]:
        return [self.darts[d].direction for d in self.vertices[vertex].rotation]

    # -- middle arcs ----------------------------------------------------------

    @cached_property
    def middle_marks(self) -> dict[str, MiddleMark]:
        """Middle darts of every white vertex whose directions form a window."""
        marks = {}
        for v in self.vertices.values():
            if v.kind != Kind.WHITE or len(v.rotation) != 6:
                continue
            start = inward_window(self.directions_at(v.id))
            if start is None:
                continue
            rot = v.rotation
            marks[v.id] = MiddleMark(v.id, rot[(start + 1) % 6], rot[(start + 4) % 6])
        return marks

    def is_middle(self, dart: str) -> bool:
        mark = self.middle_marks.get(self.darts[dart].vertex)
        return mark is not None and dart in (mark.inward, mark.outward)

    def edge_middle_at(self, edge: str, vertex: str) -> bool:
        e = self.edges[edge]
        return any(self.darts[d].vertex == vertex and self.is_middle(d) for d in (e.tail, e.head))

    # -- faces ----------------------------------------------------------------

    @cached_property
    def face_walks(self) -> dict[str, tuple[str, ...]]:
        """Face walks keyed by their smallest dart; hoop sides keyed ``h:0``/``h:1``.

        A walk leaves along dart ``d`` and continues with ``succ(twin(d))``;
        the corner between ``pred(d)`` and ``d`` belongs to the walk of ``d``.
        """
        seen: set[str] = set()
        walks: dict[str, tuple[str, ...]] = {}
        for start in sorted(self.darts):
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = self._succ[self._twin[d]]
            if d != start:
                raise EmbeddingError(f"face tracing did not close at dart {start!r}")
            walks[min(walk)] = tuple(walk)
        for h in self.hoops:
            walks[f"{h}:0"] = ()
            walks[f"{h}:1"] = ()
        return walks

    @cached_property
    def walk_of(self) -> dict[str, str]:
        out = {}
        for key, walk in self.face_walks.items():
            for d in walk:
                out[d] = key
        return out

    def face_key(self, key: str) -> str:
        """Normalize a face key (any dart of the walk, or a hoop side)."""
        if key in self.face_walks:
            return key
        if key in self.walk_of:
            return self.walk_of[key]
        raise ChartError(f"unknown face key {key!r}")

    @cached_property
    def components(self) -> list[frozenset[str]]:
        """Connected components as sets of vertex ids; a hoop is ``{hoop id}``."""
        uf = _UnionFind(self.vertices)
        for e in self.edges.values():
            if not e.closed:
                uf.union(self.darts[e.tail].vertex, self.darts[e.head].vertex)
        comps = uf.groups()
        comps.extend(frozenset([h]) for h in self.hoops)
        return comps

    def component_of_face(self, key: str) -> int:
        key = self.face_key(key)
        probe = self.darts[key].vertex if key in self.darts else key.rsplit(":", 1)[0]
        for i, comp in enumerate(self.components):
            if probe in comp:
                return i
        raise ChartError(f"face {key!r} has no component")

    def check_euler(self) -> None:
        """Every component must be a sphere map: V - E + F = 2."""
        walks_per: dict[int, int] = {}
        for key in self.face_walks:
            c = self.component_of_face(key)
            walks_per[c] = walks_per.get(c, 0) + 1
        for i, comp in enumerate(self.components):
            if len(comp) == 1 and next(iter(comp)) in self.edges:
                continue
            v = len(comp)
            e = sum(
                1
                for ed in self.edges.values()
                if not ed.closed and self.darts[ed.tail].vertex in comp
            )
            f = walks_per.get(i, 0)
            if v - e + f != 2:
                raise EmbeddingError(f"component {sorted(comp)} has V-E+F = {v - e + f}")

    @cached_property
    def _placement_pairs(self) -> list[tuple[str, str]]:
        comps = self.components
        placed = set()
        pairs = []
        for p in self.placements:
            inner, host = self.face_key(p.inner), self.face_key(p.host)
            pairs.append((inner, host))
            placed.add(self.component_of_face(inner))
        # unplaced components default into the first face of the first
        # component that is not itself placed
        if len(comps) > 1:
            root = min(i for i in range(len(comps)) if i not in placed)
            root_faces = sorted(k for k in self.face_walks if self.component_of_face(k) == root)
            for i in range(len(comps)):
                if i != root and i not in placed:
                    own = sorted(k for k in self.face_walks if self.component_of_face(k) == i)
                    pairs.append((own[0], root_faces[0]))
        return pairs

    def domains(self, edge_subset: Iterable[str] | None = None) -> list[Domain]:
        """Connected pieces of S^2 minus the given edges (default: all edges).

        Faces on both sides of an edge outside the subset are merged, as are
        the two sides of an omitted hoop and every placement pair.
        """
        subset = set(self.edges) if edge_subset is None else set(edge_subset)
        uf = _UnionFind(self.face_walks)
        for a, b in self._placement_pairs:
            uf.union(a, b)
        for e in self.edges.values():
            if e.id in subset:
                continue
            if e.closed:
                uf.union(f"{e.id}:0", f"{e.id}:1")
            else:
                uf.union(self.walk_of[e.tail], self.walk_of[e.head])
        on_subgraph = set()
        for eid in subset:
            e = self.edges.get(eid)
            if e is not None and not e.closed:
                on_subgraph.add(self.darts[e.tail].vertex)
                on_subgraph.add(self.darts[e.head].vertex)
        inside: dict[str, set[str]] = {}
        for v in self.vertices.values():
            if v.id in on_subgraph:
                continue
            root = uf.find(self.walk_of[v.rotation[0]])
            inside.setdefault(root, set()).add(v.id)
        return [
            Domain(group, frozenset(inside.get(uf.find(next(iter(group))), ())))
            for group in uf.groups()
        ]

    def domain_of_walk(self, domains: Sequence[Domain], key: str) -> int:
        key = self.face_key(key)
        for i, dom in enumerate(domains):
            if key in dom.walks:
                return i
        raise ChartError(f"walk {key!r} in no domain")

    def faces(self) -> list[Domain]:
        """Complementary regions of the whole chart; checks the embedding first."""
        self.check_euler()
        return self.domains()

    def white_count(self, vertices: Iterable[str]) -> int:
        return sum(1 for v in vertices if self.vertices[v].kind == Kind.WHITE)

    @property
    def complexity(self) -> Complexity:
        free = 0
        for e in self.edges.values():
            if e.closed:
                continue
            ends = (self.darts[e.tail].vertex, self.darts[e.head].vertex)
            if all(self.vertices[x].kind == Kind.BLACK for x in ends):
                free += 1
        return Complexity(len(self.vertices_of(Kind.WHITE)), -free)


def inward_window(directions: Sequence[str]) -> int | None:
    """Start index of the three consecutive inward darts, or None."""
    if len(directions) != 6 or directions.count(IN) != 3:
        return None
    for s in range(6):
        if all(directions[(s + i) % 6] == IN for i in range(3)):
            return s
    return None


VertexSpec = tuple  # (id, kind, [darts])
EdgeSpec = tuple  # (id, label, tail, head) or (id, label, None, None[, hint])


def assemble(
    degree: int,
    vertex_specs: Iterable[VertexSpec],
    edge_specs: Iterable[EdgeSpec],
    *,
    stubs: Iterable[Stub] = (),
    placements: Iterable[Placement] = (),
    outer_face: str | None = None,
    name: str = "",
    meta: dict[str, str] | None = None,
    strict: bool = True,
) -> Chart:
    """Build a chart from specs without checking the chart axioms.

    ``strict`` rejects rotations whose length is not 1, 4 or 6; parsing uses
    ``strict=False`` so that bad degrees surface as validation findings.
    """
    vertices: dict[str, Vertex] = {}
    owner: dict[str, str] = {}
    for spec in vertex_specs:
        vid, kind, rot = spec[0], Kind(spec[1]), tuple(spec[2])
        if vid in vertices:
            raise ChartError(f"duplicate vertex {vid!r}")
        if not rot:
            raise ChartError(f"vertex {vid!r} has an empty rotation")
        if strict and len(rot) not in (1, 4, 6):
            raise ChartError(f"vertex {vid!r} has rotation length {len(rot)}")
        for d in rot:
            if d in owner:
                raise ChartError(f"dart {d!r} used at {owner[d]!r} and {vid!r}")
            owner[d] = vid
        vertices[vid] = Vertex(vid, kind, rot)

    edges: dict[str, Edge] = {}
    darts: dict[str, Dart] = {}
    for spec in edge_specs:
        eid, label, tail, head = spec[0], int(spec[1]), spec[2], spec[3]
        hint = spec[4] if len(spec) > 4 else None
        if eid in edges:
            raise ChartError(f"duplicate edge {eid!r}")
        if (tail is None) != (head is None):
            raise ChartError(f"edge {eid!r} has exactly one endpoint")
        edges[eid] = Edge(eid, label, tail, head, hint)
        for d, direction in ((tail, OUT), (head, IN)):
            if d is None:
                continue
            if d not in owner:
                raise ChartError(f"edge {eid!r} references dangling dart {d!r}")
            if d in darts:
                raise ChartError(f"dart {d!r} used by two edges")
            darts[d] = Dart(d, eid, owner[d], direction, label)
    for s in stubs:
        if s.dart not in owner:
            raise ChartError(f"stub {s.dart!r} is not in any rotation")
        if s.dart in darts:
            raise ChartError(f"stub {s.dart!r} is also an edge end")
        darts[s.dart] = Dart(s.dart, None, owner[s.dart], s.direction, int(s.label))
    missing = set(owner) - set(darts)
    if missing:
        raise ChartError(f"darts without edge: {sorted(missing)}")
    return Chart(
        degree=degree,
        vertices=vertices,
        edges=edges,
        darts=darts,
        placements=tuple(placements),
        outer_face=outer_face,
        name=name,
        meta=dict(meta or {}),
    )


def specs_of(chart: Chart) -> tuple[list, list, list[Stub]]:
    vs = [(v.id, v.kind.value, list(v.rotation)) for v in chart.vertices.values()]
    es = []
    for e in chart.edges.values():
        es.append((e.id, e.label, e.tail, e.head) + ((e.side_hint,) if e.closed else ()))
    st = [Stub(d.id, d.label, d.direction) for d in chart.darts.values() if d.edge is None]
    return vs, es, st


def ro_transform(chart: Chart, reflect: bool, reverse: bool) -> Chart:
    """Reflect the sphere and/or reverse every edge orientation."""
    vs, es, st = specs_of(chart)
    if reflect:
        vs = [(vid, kind, [rot[0]] + list(reversed(rot[1:]))) for vid, kind, rot in vs]
    if reverse:
        es = [
            (eid, label, head, tail, *rest) if tail is not None else (eid, label, tail, head, *rest)
            for eid, label, tail, head, *rest in es
        ]
        st = [Stub(s.dart, s.label, flip(s.direction)) for s in st]
    placements = chart.placements
    if reflect:
        # a dart-named face becomes the walk through the dart's predecessor
        placements = tuple(
            Placement(_reflect_key(chart, p.inner), _reflect_key(chart, p.host))
            for p in placements
        )
    outer = _reflect_key(chart, chart.outer_face) if reflect and chart.outer_face else chart.outer_face
    return assemble(
        chart.degree,
        vs,
        es,
        stubs=st,
        placements=placements,
        outer_face=outer,
        name=chart.name,
        meta=chart.meta,
        strict=False,
    )


def _reflect_key(chart: Chart, key: str) -> str:
    # corner (pred(d), d) is left along pred(d) once rotations are reversed
    if key in chart.darts:
        return chart.pred(key)
    return key


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    clause: str
    where: str
    detail: str

    def __str__(self) -> str:
        return f"{self.clause} at {self.where}: {self.detail}"


AXIOMS = "axioms-only"
MINIMAL = "minimal-assumptions"


def validate(chart: Chart, mode: str = AXIOMS) -> list[Violation]:
    """Check chart conditions (i)-(iv); with ``MINIMAL`` also clauses A2-A4 of minimal charts."""
    out: list[Violation] = []
    try:
        chart.check_euler()
    except EmbeddingError as exc:
        out.append(Violation("embedding", "chart", str(exc)))
    n = chart.degree
    for e in chart.edges.values():
        if not 1 <= e.label <= n - 1:
            out.append(Violation("(ii)", e.id, f"label {e.label} outside 1..{n - 1}"))
    for d in chart.stubs:
        if not 1 <= d.label <= n - 1:
            out.append(Violation("(ii)", d.id, f"stub label {d.label} outside 1..{n - 1}"))
    for v in sorted(chart.vertices.values(), key=lambda v: v.id):
        out.extend(_check_vertex(chart, v))
    if mode == MINIMAL:
        out.extend(_check_minimal(chart))
    return out


def _check_vertex(chart: Chart, v: Vertex) -> list[Violation]:
    out = []
    deg = len(v.rotation)
    if deg not in (1, 4, 6):
        return [Violation("(i)", v.id, f"degree {deg}")]
    if DEGREE[v.kind] != deg:
        return [Violation("(i)", v.id, f"{v.kind.value} vertex of degree {deg}")]
    labels = chart.labels_at(v.id)
    dirs = chart.directions_at(v.id)
    if v.kind == Kind.WHITE:
        lo = min(labels)
        if sorted(set(labels)) != [lo, lo + 1] or any(
            labels[i] == labels[(i + 1) % 6] for i in range(6)
        ):
            out.append(Violation("(iii)", v.id, f"labels {labels} do not alternate i, i+1"))
        if inward_window(dirs) is None:
            out.append(Violation("(iii)", v.id, f"directions {dirs} lack three consecutive inward"))
    elif v.kind == Kind.CROSSING:
        for i in range(2):
            if labels[i] != labels[i + 2]:
                out.append(Violation("(iv)", v.id, f"diagonal labels {labels[i]} != {labels[i + 2]}"))
            elif dirs[i] == dirs[i + 2]:
                out.append(Violation("(iv)", v.id, "diagonal not oriented coherently"))
        if abs(labels[0] - labels[1]) <= 1:
            out.append(Violation("(iv)", v.id, f"labels {labels[0]}, {labels[1]} with |i-j| <= 1"))
    return out


def _check_minimal(chart: Chart) -> list[Violation]:
    out = []
    kinds = {v.id: v.kind for v in chart.vertices.values()}
    for e in sorted(chart.edges.values(), key=lambda e: e.id):
        if e.closed:
            continue
        a, b = chart.darts[e.tail].vertex, chart.darts[e.head].vertex
        ends = sorted((kinds[a].value, kinds[b].value))
        if ends == ["black", "black"]:
            out.append(Violation("A3", e.id, "free edge"))
        elif "black" in ends:
            if ends != ["black", "white"]:
                out.append(Violation("A2", e.id, "edge with a black vertex is neither free nor terminal"))
            else:
                w = a if kinds[a] == Kind.WHITE else b
                if not chart.edge_middle_at(e.id, w):
                    out.append(Violation("A2", e.id, "terminal edge without a middle arc"))
    from surfchart.subgraph import closed_curve_sides  # cycle: subgraph imports chart

    for kind, carrier, sides in closed_curve_sides(chart):
        counts = [chart.white_count(s) for s in sides]
        if kind == "hoop" and 0 in counts:
            out.append(Violation("A3", carrier, "simple hoop"))
        elif kind in ("hoop", "ring") and 0 in counts:
            out.append(Violation("A4", carrier, f"{kind} with a white-free side"))
    return out
