"""Enumeration of candidate connected components of a label subgraph.

A component of the label-m subgraph has white vertices with exactly three
label-m darts and black vertices of degree one.  We enumerate them as small
embedded multigraphs, optionally with edge orientations, and deduplicate by a
canonical code of the sphere map.

Search order: underlying multigraphs (degree sequence 3^w plus terminals),
then rotation systems filtered by Euler's formula, then edge directions by
backtracking with the local rules as forward checks.

Codes are taken after *BW collapse*: the terminal edge at a white vertex is
removed and the vertex is marked instead, so placing a terminal edge in one
corner or the other does not create a new class.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from surfchart.chart import IN, OUT, flip

WHITE, BW, BLACK = "w", "bw", "k"


@dataclass(frozen=True)
class AbstractComponent:
    """An embedded label-m component.

    Vertices ``0..whites-1`` are white, the rest black.  Darts are integers;
    ``twin`` pairs darts into edges, ``rotation[v]`` lists the darts at ``v``
    counterclockwise.  ``direction[d]`` is the sense of dart ``d`` at its
    vertex, or ``None`` for an unoriented component.
    """

    whites: int
    rotation: tuple[tuple[int, ...], ...]
    twin: tuple[int, ...]
    direction: tuple[str, ...] | None = None
    names: tuple[str, ...] = field(default=(), compare=False)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * len(self.twin)
        for v, rot in enumerate(self.rotation):
            for d in rot:
                out[d] = v
        return tuple(out)

    @property
    def blacks(self) -> int:
        return len(self.rotation) - self.whites

    @property
    def edge_count(self) -> int:
        return len(self.twin) // 2

    def is_black(self, v: int) -> bool:
        return v >= self.whites

    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(d, t), max(d, t)) for d, t in enumerate(self.twin)})

    def terminal_dart(self, v: int) -> int | None:
        for d in self.rotation[v]:
            if self.is_black(self.vertex_of[self.twin[d]]):
                return d
        return None

    def has_loop(self) -> bool:
        return any(self.vertex_of[d] == self.vertex_of[t] for d, t in enumerate(self.twin))

    def face_count(self) -> int:
        succ = {}
        for rot in self.rotation:
            for i, d in enumerate(rot):
                succ[d] = rot[(i + 1) % len(rot)]
        seen: set[int] = set()
        faces = 0
        for start in range(len(self.twin)):
            if start in seen:
                continue
            faces += 1
            d = start
            while d not in seen:
                seen.add(d)
                d = succ[self.twin[d]]
        return faces

    def is_planar(self) -> bool:
        return len(self.rotation) - self.edge_count + self.face_count() == 2

    def middle_dart(self, v: int) -> int | None:
        """The minority-direction dart at white ``v``."""
        if self.direction is None:
            return None
        return _middle_given(self, v, self.direction)

    def local_violations(self) -> list[str]:
        """Local chart rules for an oriented component; empty when consistent."""
        out = []
        if self.direction is None:
            return ["unoriented"]
        for d, t in enumerate(self.twin):
            if self.direction[d] == self.direction[t]:
                out.append(f"edge {d}-{t} oriented inconsistently")
        for v in range(self.whites):
            mid = self.middle_dart(v)
            if mid is None:
                out.append(f"white {v}: three darts with one direction")
                continue
            term = self.terminal_dart(v)
            if term is not None and term != mid:
                out.append(f"white {v}: terminal edge is not middle")
        return out

    def with_direction(self, direction: Sequence[str] | None) -> "AbstractComponent":
        return AbstractComponent(
            self.whites, self.rotation, self.twin, None if direction is None else tuple(direction), self.names
        )

    def reflected(self) -> "AbstractComponent":
        rot = tuple((r[0],) + tuple(reversed(r[1:])) for r in self.rotation)
        return AbstractComponent(self.whites, rot, self.twin, self.direction, self.names)

    def reversed(self) -> "AbstractComponent":
        if self.direction is None:
            return self
        return self.with_direction([flip(x) for x in self.direction])


# -- canonical codes ------------------------------------------------------------


def _collapsed(comp: AbstractComponent, with_keep: bool = False):
    """Rotation/twin/marks/directions of the BW-collapsed map (darts renumbered).

    With ``with_keep`` the list of original dart numbers is returned as well.
    """
    keep = []
    marks = {}
    for v in range(comp.whites):
        term = comp.terminal_dart(v)
        marks[v] = BW if term is not None else WHITE
        keep.extend(d for d in comp.rotation[v] if d != term)
    index = {d: i for i, d in enumerate(keep)}
    rotation = []
    vmark = []
    for v in range(comp.whites):
        term = comp.terminal_dart(v)
        rotation.append(tuple(index[d] for d in comp.rotation[v] if d != term))
        vmark.append(marks[v])
    twin = [0] * len(keep)
    for d in keep:
        twin[index[d]] = index[comp.twin[d]]
    direction = None
    if comp.direction is not None:
        direction = [comp.direction[d] for d in keep]
    if with_keep:
        return rotation, twin, vmark, direction, keep
    return rotation, twin, vmark, direction


def _raw_map(comp: AbstractComponent):
    vmark = [WHITE] * comp.whites + [BLACK] * comp.blacks
    return [tuple(r) for r in comp.rotation], list(comp.twin), vmark, (
        list(comp.direction) if comp.direction is not None else None
    )


def _code_from(rotation, twin, vmark, direction, root: int, mirror: bool, reverse: bool) -> tuple:
    vertex_of = {}
    succ = {}
    for v, rot in enumerate(rotation):
        for i, d in enumerate(rot):
            vertex_of[d] = v
            succ[d] = rot[(i - 1) % len(rot)] if mirror else rot[(i + 1) % len(rot)]
    number = {root: 0}
    order = [root]
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        for nxt in (succ[d], twin[d]):
            if nxt not in number:
                number[nxt] = len(order)
                order.append(nxt)
    if len(order) != len(twin):
        raise ValueError("canonical code requires a connected component")
    code = []
    for d in order:
        sense = ""
        if direction is not None:
            sense = direction[d] if not reverse else flip(direction[d])
        code.append((number[succ[d]], number[twin[d]], vmark[vertex_of[d]], sense))
    return tuple(code)


def canonical_code(
    comp: AbstractComponent, *, oriented: bool | None = None, collapse_bw: bool = True, ro: bool = True
) -> str:
    """Code equal for two components iff they agree up to relabeling and sphere moves.

    The quotient always includes relabeling and the choice of outer face
    (codes are computed on the sphere).  With ``ro`` it also includes
    reflection and global orientation reversal.  ``oriented`` defaults to
    whether the component carries directions.
    """
    if oriented is None:
        oriented = comp.direction is not None
    rotation, twin, vmark, direction = _collapsed(comp) if collapse_bw else _raw_map(comp)
    if not oriented:
        direction = None
    if not twin:
        return f"w{comp.whites}b{comp.blacks}:empty"
    mirrors = (False, True) if ro else (False,)
    reverses = (False, True) if (ro and direction is not None) else (False,)
    best = min(
        _code_from(rotation, twin, vmark, direction, r, m, rv)
        for r in range(len(twin))
        for m in mirrors
        for rv in reverses
    )
    body = ";".join(f"{a},{b},{c}{s[:1]}" for a, b, c, s in best)
    return f"w{comp.whites}b{comp.blacks}{'o' if direction is not None else 'u'}:{body}"


def _isomorphisms(a, b, mirror: bool) -> Iterator[dict[int, int]]:
    """Dart bijections from map ``a`` onto map ``b`` (optionally mirror-reversing)."""
    rot_a, twin_a, mark_a = a[0], a[1], a[2]
    rot_b, twin_b, mark_b = b[0], b[1], b[2]
    if len(twin_a) != len(twin_b) or not twin_a:
        return

    def succ_table(rotation, backwards):
        succ, vert = {}, {}
        for v, rot in enumerate(rotation):
            for i, d in enumerate(rot):
                vert[d] = v
                succ[d] = rot[(i - 1) % len(rot)] if backwards else rot[(i + 1) % len(rot)]
        return succ, vert

    succ_a, vert_a = succ_table(rot_a, False)
    succ_b, vert_b = succ_table(rot_b, mirror)
    for target in range(len(twin_b)):
        phi = {0: target}
        stack = [0]
        ok = True
        while stack and ok:
            d = stack.pop()
            for nxt_a, nxt_b in ((succ_a[d], succ_b[phi[d]]), (twin_a[d], twin_b[phi[d]])):
                if nxt_a in phi:
                    ok = phi[nxt_a] == nxt_b
                else:
                    phi[nxt_a] = nxt_b
                    stack.append(nxt_a)
                if not ok:
                    break
        if not ok or len(set(phi.values())) != len(phi) or len(phi) != len(twin_a):
            continue
        if all(mark_a[vert_a[d]] == mark_b[vert_b[phi[d]]] for d in phi):
            yield phi


def matches_pattern(comp: AbstractComponent, ref: AbstractComponent, edges: Iterable[str] | None) -> bool:
    """Whether some RO-image of oriented ``comp`` agrees with ``ref`` on the named edges.

    Both are compared after BW collapse; ``edges`` names edges of ``ref``
    (via ``ref.names``), ``None`` meaning every edge.
    """
    ca = _collapsed(comp, with_keep=True)
    cb = _collapsed(ref, with_keep=True)
    keep_b = cb[4]
    wanted = None if edges is None else set(edges)
    checked = [
        i for i, d in enumerate(keep_b) if wanted is None or (ref.names and ref.names[d] in wanted)
    ]
    for mirror in (False, True):
        for phi in _isomorphisms(ca, cb, mirror):
            inv = {v: k for k, v in phi.items()}
            for reverse in (False, True):
                if all(
                    (flip(ca[3][inv[i]]) if reverse else ca[3][inv[i]]) == cb[3][i] for i in checked
                ):
                    return True
    return False


def short_code(code: str) -> str:
    return hashlib.sha1(code.encode()).hexdigest()[:12]


# -- generation -------------------------------------------------------------------


def _multigraphs(whites: int, terminals: int, no_loop: bool) -> Iterator[list[tuple[int, int]]]:
    """Connected multigraphs on the white vertices; terminals sit at whites 0..t-1."""
    need = [2 if v < terminals else 3 for v in range(whites)]
    pairs = [(i, j) for i in range(whites) for j in range(i, whites) if not (no_loop and i == j)]

    def rec(k: int, rest: list[int], acc: list[tuple[int, int]]):
        if k == len(pairs):
            if not any(rest):
                yield list(acc)
            return
        i, j = pairs[k]
        cost = 2 if i == j else 1
        cap = rest[i] // 2 if i == j else min(rest[i], rest[j])
        for mult in range(cap, -1, -1):
            nxt = list(rest)
            nxt[i] -= cost * mult if i == j else mult
            if i != j:
                nxt[j] -= mult
            if any(x < 0 for x in nxt):
                continue
            acc.extend([(i, j)] * mult)
            yield from rec(k + 1, nxt, acc)
            del acc[len(acc) - mult :]

    for edges in rec(0, need, []):
        if _connected(whites, edges):
            yield edges


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == n


def _build(whites: int, terminals: int, edges: Sequence[tuple[int, int]]):
    """Darts and twin list for a multigraph plus terminal edges at whites 0..t-1."""
    at: list[list[int]] = [[] for _ in range(whites + terminals)]
    twin: list[int] = []
    for a, b in edges:
        d = len(twin)
        twin.extend([d + 1, d])
        at[a].append(d)
        at[b].append(d + 1)
    for t in range(terminals):
        d = len(twin)
        twin.extend([d + 1, d])
        at[t].append(d)
        at[whites + t].append(d + 1)
    return at, twin


def embeddings(whites: int, terminals: int, edges: Sequence[tuple[int, int]]) -> Iterator[AbstractComponent]:
    """All sphere rotation systems of the multigraph (one per cyclic order choice)."""
    at, twin = _build(whites, terminals, edges)
    choices = []
    for v, ds in enumerate(at):
        if len(ds) == 3:
            choices.append([(ds[0], ds[1], ds[2]), (ds[0], ds[2], ds[1])])
        else:
            choices.append([tuple(ds)])
    for rot in itertools.product(*choices):
        comp = AbstractComponent(whites, tuple(rot), tuple(twin))
        if comp.is_planar():
            yield comp


def orientations_raw(comp: AbstractComponent) -> list[AbstractComponent]:
    """Every direction assignment satisfying the local rules (no quotient).

    Rules: at each white vertex the three darts split two against one, the
    single dart is the middle one, and a terminal edge must be that middle
    dart.  The last rule makes the two other darts at a terminal-carrying
    white vertex share a direction.
    """
    edge_list = comp.edges()
    direction: list[str | None] = [None] * len(comp.twin)
    found = []

    def ok_at(v: int) -> bool:
        if comp.is_black(v):
            return True
        rot = comp.rotation[v]
        term = comp.terminal_dart(v)
        if term is not None:
            a, b = (direction[d] for d in rot if d != term)
            if a is not None and b is not None and a != b:
                return False
        ds = [direction[d] for d in rot]
        if None in ds:
            return True
        if ds.count(IN) in (0, 3):
            return False
        return term is None or term == _middle_given(comp, v, direction)

    def rec(k: int):
        if k == len(edge_list):
            found.append(comp.with_direction(direction))
            return
        a, b = edge_list[k]
        for da in (OUT, IN):
            direction[a], direction[b] = da, flip(da)
            if ok_at(comp.vertex_of[a]) and ok_at(comp.vertex_of[b]):
                rec(k + 1)
        direction[a] = direction[b] = None

    rec(0)
    return found


def _middle_given(comp: AbstractComponent, v: int, direction: Sequence[str | None]) -> int | None:
    rot = comp.rotation[v]
    ins = [d for d in rot if direction[d] == IN]
    outs = [d for d in rot if direction[d] == OUT]
    if len(ins) == 1 and len(outs) == 2:
        return ins[0]
    if len(outs) == 1 and len(ins) == 2:
        return outs[0]
    return None


def orientations(comp: AbstractComponent) -> dict[str, AbstractComponent]:
    """Valid orientation assignments of ``comp`` up to RO, keyed by oriented code."""
    out: dict[str, AbstractComponent] = {}
    for oriented in orientations_raw(comp.with_direction(None)):
        out.setdefault(canonical_code(oriented), oriented)
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class Flags:
    no_loop: bool = True
    orient: bool = True
    minimal_local_rules: bool = True


def enumerate_components(whites: int, flags: Flags = Flags()) -> dict[str, AbstractComponent]:
    """Embedded components with ``whites`` white vertices, keyed by canonical code.

    Codes are of the underlying (unoriented, BW-collapsed) embedded graph.
    With ``orient`` (or ``minimal_local_rules``) a class is kept only if some
    orientation satisfies the local rules; the stored representative then
    carries such an orientation.
    """
    if whites > 7:
        raise ValueError("enumeration is limited to at most 7 white vertices")
    filt = flags.orient or flags.minimal_local_rules
    out: dict[str, AbstractComponent] = {}
    # handshake: 3w + b is even, and b <= w (one terminal per white at most)
    for terminals in range(whites % 2, whites + 1, 2):
        for edges in _multigraphs(whites, terminals, flags.no_loop):
            for comp in embeddings(whites, terminals, edges):
                code = canonical_code(comp, oriented=False)
                if code in out:
                    continue
                if filt:
                    oriented = orientations_raw(comp)
                    if not oriented:
                        continue
                    comp = oriented[0]
                out[code] = comp
    return dict(sorted(out.items()))


# -- embedding into a chart --------------------------------------------------------


def corner_directions(directions: Sequence[str]) -> list[str]:
    """Directions of the next-label darts sitting after each of three label-m darts.

    A corner whose two label-m darts agree takes their direction; a mixed
    corner takes the minority direction of the triple.  This is the only
    filling that leaves three consecutive inward darts in the rotation.
    """
    minority = IN if list(directions).count(IN) == 1 else OUT
    out = []
    for i in range(3):
        a, b = directions[i], directions[(i + 1) % 3]
        out.append(a if a == b else minority)
    return out


def stub_chart(comp: AbstractComponent, *, label: int = 1, degree: int = 3, name: str = "", meta=None,
               vertex_names: Sequence[str] | None = None, edge_names: dict[int, str] | None = None):
    """The oriented component as a chart whose next-label darts are stubs."""
    from surfchart.chart import Stub, assemble

    if comp.direction is None:
        raise ValueError("stub_chart needs an oriented component")
    nv = len(comp.rotation)
    vnames = list(vertex_names) if vertex_names else [
        f"w{v + 1}" if v < comp.whites else f"b{v - comp.whites + 1}" for v in range(nv)
    ]
    edge_names = dict(edge_names or {})
    dart_id = {}
    for k, (a, b) in enumerate(comp.edges()):
        eid = edge_names.get(a) or edge_names.get(b) or f"e{k + 1}"
        edge_names[a] = edge_names[b] = eid
    for d in range(len(comp.twin)):
        dart_id[d] = f"{edge_names[d]}.{vnames[comp.vertex_of[d]]}"
    vertices, stubs, edges = [], [], []
    for v, rot in enumerate(comp.rotation):
        if comp.is_black(v):
            vertices.append((vnames[v], "black", [dart_id[d] for d in rot]))
            continue
        fill = corner_directions([comp.direction[d] for d in rot])
        darts = []
        for i, d in enumerate(rot):
            sid = f"{vnames[v]}.s{i + 1}"
            darts.extend([dart_id[d], sid])
            stubs.append(Stub(sid, label + 1, fill[i]))
        vertices.append((vnames[v], "white", darts))
    for a, b in comp.edges():
        tail, head = (a, b) if comp.direction[a] == OUT else (b, a)
        edges.append((edge_names[a], label, dart_id[tail], dart_id[head]))
    return assemble(degree, vertices, edges, stubs=stubs, name=name, meta=meta)


def oval_component() -> AbstractComponent:
    """The oriented oval: two parallel edges from white 0 to white 1, a terminal at each.

    Both terminal edges leave the digon on the same side, so its inner face
    carries only the two middle next-label darts.  White 0 has the inward
    terminal and two outward digon edges.
    """
    rotation = ((0, 4, 2), (1, 3, 6), (5,), (7,))
    twin = (1, 0, 3, 2, 5, 4, 7, 6)
    direction = (OUT, IN, OUT, IN, IN, OUT, OUT, IN)
    return AbstractComponent(2, rotation, twin, direction)


def vertex_names(comp: AbstractComponent, first: int = 1) -> list[str]:
    """``w<i>`` for whites; a black vertex is named after its white neighbour."""
    names = [f"w{v + first}" for v in range(comp.whites)]
    for v in range(comp.whites, len(comp.rotation)):
        (d,) = comp.rotation[v]
        names.append(f"b{comp.vertex_of[comp.twin[d]] + first}")
    return names


# -- classification checks ----------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    lemma: str
    expected: tuple[str, ...]
    found: tuple[str, ...]
    notes: tuple[str, ...] = ()

    @property
    def extras(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.found) - set(self.expected)))

    @property
    def missing(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.expected) - set(self.found)))

    @property
    def match(self) -> bool:
        return not self.extras and not self.missing and len(self.found) == len(set(self.found))

    def lines(self) -> list[str]:
        out = [f"{self.lemma}: {'match' if self.match else 'MISMATCH'}, {len(self.found)} graphs"]
        out += [f"  found {name}" for name in self.found]
        out += [f"  extra {name}" for name in self.extras]
        out += [f"  missing {name}" for name in self.missing]
        out += [f"  {n}" for n in self.notes]
        return out


def _named(codes: Iterable[str]) -> tuple[str, ...]:
    from surfchart.references import reference_codes

    by_code = {c: n for n, c in reference_codes().items()}
    return tuple(sorted(by_code.get(c, f"unknown-{short_code(c)}") for c in codes))


def verify_classification(lemma: str) -> ClassificationReport:
    """Compare an enumeration against the reference graphs (``5.1b``, ``7.1`` or ``7.2``)."""
    from surfchart.references import FIVE, REFINED, SMALL, component_of, golden

    lemma = lemma.lower().removeprefix("lemma-").removeprefix("lemma")
    if lemma == "5.1b":
        found = _named(list(enumerate_components(2)) + list(enumerate_components(3)))
        expected = tuple(sorted(golden(n).meta["class"] for n in SMALL))
        return ClassificationReport("5.1b", expected, found)
    if lemma == "7.1":
        comps = enumerate_components(5)
        found = _named(comps)
        blacks = {}
        for code, comp in comps.items():
            blacks[_named([code])[0]] = comp.blacks
        notes = (f"black vertices {tuple(blacks.get(n, -1) for n in FIVE)}",)
        return ClassificationReport("7.1", FIVE, found, notes)
    if lemma == "7.2":
        found, notes = [], []
        for name in REFINED:
            ref_chart = golden(name)
            graph, pattern = ref_chart.meta["refines"], ref_chart.meta.get("pattern", "all")
            ref = component_of(ref_chart)
            classes = orientations(component_of(golden(graph)).with_direction(None))
            edges = None if pattern == "all" else pattern.split(",")
            ok = bool(classes) and all(matches_pattern(c, ref, edges) for c in classes.values())
            if pattern == "all":
                ok = ok and list(classes) == [canonical_code(ref)]
            if ok:
                found.append(name)
            notes.append(f"{graph}: {len(classes)} orientation classes, pattern {pattern}")
        return ClassificationReport("7.2", REFINED, tuple(found), tuple(notes))
    raise ValueError(f"unknown lemma {lemma!r}")
