"""Named lemma rules over partial configurations, and the elimination pipeline.

A configuration is a label-m component drawn as a chart whose label-(m+1)
darts are still open (stubs), possibly with the two-white oval placed in
one of its faces and some label-(m+1) edges already drawn.

Derived rules never trust the lemma they are named after.  Each finds its
hypothesis pattern and then re-checks the contradiction on the
configuration itself through io_balance, exhaustive pairing
(region_completions) or detect_lenses.  The common currency is white
counting: in a chart of type (m;7) whose label-m subgraph is of type
(5,2), the only whites off the five-white component are the two of an
oval, and they sit in a single face.  A face that can be completed
neither without whites nor around the oval needs an eighth white.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

from surfchart.chart import IN, OUT, Chart, Kind, Placement, Stub, assemble, flip, specs_of
from surfchart.components import (
    AbstractComponent,
    enumerate_components,
    matches_pattern,
    oval_component,
    orientations,
    stub_chart,
    vertex_names,
)
from surfchart.docio import serialize
from surfchart.references import FIVE, REFINED, component_of, golden
from surfchart.regions import (
    COHERENT,
    AngledDisk,
    boundary_darts,
    boundary_orientation,
    detect_lenses,
    draw_completion,
    find_angled_disks,
    io_balance,
    io_witness,
    realizable,
    region_completions,
    region_of,
    region_walks,
)
from surfchart.subgraph import classify_component, components, extract

AXIOM, DERIVED, SCRIPTED = "axiom", "derived", "scripted"
REFUTED, CONSTRAINED, SURVIVES, NOOP = "refuted", "constrained", "survives", "no-op"

M, UPPER = 1, 2  # the label-m component is drawn with label 1, its stubs carry label 2
TOTAL = 7
LENS_RULE = "L10.1-axiom"
LOOP_RULE = "L5.3-axiom"
THEOREM = "refuted: no minimal chart of type (m;7)"


# -- records ---------------------------------------------------------------------


@dataclass(frozen=True)
class RuleVerdict:
    outcome: str
    rule: str
    location: str = ""
    witness: str = ""
    facts: tuple[str, ...] = ()

    @property
    def refuted(self) -> bool:
        return self.outcome == REFUTED


@dataclass(frozen=True)
class TraceRecord:
    branch: str
    rule: str
    verdict: str
    witness: str
    # recomputes a scripted refutation; rule applications replay through the rule
    check: Callable[[], bool] | None = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        return f"{self.branch} | {self.rule} | {self.verdict} | {self.witness}"


@dataclass(frozen=True)
class Settings:
    disabled: frozenset[str] = frozenset()

    def enabled(self, rule_id: str) -> bool:
        return rule_id not in self.disabled

    @property
    def forbid_lens(self) -> bool:
        return self.enabled(LENS_RULE)

    @property
    def forbid_loop(self) -> bool:
        return self.enabled(LOOP_RULE)

    def completions(self, chart: Chart, region, *, limit: int | None = None):
        return region_completions(
            chart, region, UPPER, forbid_lens=self.forbid_lens, forbid_loop=self.forbid_loop, limit=limit
        )


@dataclass(frozen=True)
class DiskInfo:
    disk: AngledDisk
    face: str
    coherent: bool
    off_senses: tuple[tuple[str, str], ...]  # (arc, sense at its disk white) for off-disk internal arcs
    feeler_senses: tuple[tuple[str, str], ...]

    @property
    def where(self) -> str:
        return f"disk {'-'.join(self.disk.whites)} (face {self.face})"


@dataclass(frozen=True)
class Configuration:
    """A partial chart plus the facts that produced it.

    ``focus`` lists label-(m+1) edges whose lenses are preferred as
    witnesses; ``pending`` are arcs still to be drawn (checked by the
    planarity rule).
    """

    graph: str
    branch: str
    chart: Chart
    component: AbstractComponent | None = None
    facts: tuple[str, ...] = ()
    focus: tuple[str, ...] = ()
    pending: tuple[tuple[str, str], ...] = ()

    @property
    def encoding(self) -> str:
        return serialize(self.chart)

    @property
    def has_oval(self) -> bool:
        return bool(oval_whites(self.chart))

    @cached_property
    def disks(self) -> tuple[DiskInfo, ...]:
        return tuple(_disk_infos(self.chart))


@dataclass(frozen=True)
class Rule:
    id: str
    kind: str
    citation: str
    applies: Callable[[Configuration, Settings], bool]
    conclude: Callable[[Configuration, Settings], RuleVerdict]


def apply_rule(rule: Rule, cfg: Configuration, settings: Settings | None = None) -> RuleVerdict:
    """The rule's verdict on ``cfg``; inapplicable or disabled rules give a no-op."""
    settings = settings or Settings()
    if not settings.enabled(rule.id) or not rule.applies(cfg, settings):
        return RuleVerdict(NOOP, rule.id)
    return rule.conclude(cfg, settings)


# -- the oval ----------------------------------------------------------------------

OVAL_VERTICES = ("o1", "o2", "ob1", "ob2")
OVAL_EDGES = {0: "od1", 2: "od2", 4: "ot1", 6: "ot2"}


@lru_cache(maxsize=None)
def oval_chart(names: tuple[str, ...] = OVAL_VERTICES) -> Chart:
    """The oriented oval with its label-(m+1) stubs; its inner face holds two middle stubs."""
    return stub_chart(oval_component(), vertex_names=names, edge_names=OVAL_EDGES, name="oval")


def with_oval(chart: Chart, host: str, oval: Chart | None = None) -> Chart:
    """``chart`` with the oval placed in the face (or domain) of ``host``."""
    oval = oval or oval_chart()
    v1, e1, s1 = specs_of(chart)
    v2, e2, s2 = specs_of(oval)
    inner = oval.vertices[oval_vertices(oval)[0]].rotation[1]
    return assemble(
        chart.degree, v1 + v2, e1 + e2, stubs=s1 + s2,
        placements=list(chart.placements) + [Placement(inner, host)], name=chart.name, meta=chart.meta,
    )


def oval_vertices(oval: Chart) -> list[str]:
    return sorted(v for v in oval.vertices if oval.vertices[v].kind == Kind.WHITE)


def oval_whites(chart: Chart) -> set[str]:
    """Whites of two-white label-m components (the placed oval, if any)."""
    sub = extract(chart, M)
    return {w for c in components(sub, chart) if len(c.whites) == 2 for w in c.whites}


# -- disk analysis -------------------------------------------------------------------


def _sense(chart: Chart, sub, arc_id: str, white: str) -> str:
    return OUT if chart.darts[sub.arc(arc_id).start].vertex == white else IN


def _disk_infos(chart: Chart) -> list[DiskInfo]:
    sub = extract(chart, M)
    out = []
    for d in find_angled_disks(chart, M):
        if len(d.region.walks) != 1:
            # a side split into several faces has label-m edges inside; no rule matches it
            continue
        face = min(d.region.walks)
        off = []
        for v in d.whites:
            for a in sub.arcs:
                if a.closed or a.id in d.boundary or a.id in d.feelers:
                    continue
                if v in (chart.darts[a.start].vertex, chart.darts[a.end].vertex):
                    off.append((a.id, _sense(chart, sub, a.id, v)))
        feelers = []
        for f in d.feelers:
            a = sub.arc(f)
            v = next(x for x in (chart.darts[a.start].vertex, chart.darts[a.end].vertex) if x in d.whites)
            feelers.append((f, _sense(chart, sub, f, v)))
        coherent = boundary_orientation(chart, d) == COHERENT
        out.append(DiskInfo(d, face, coherent, tuple(off), tuple(feelers)))
    return out


def overflow(chart: Chart, face: str, settings: Settings) -> str | None:
    """Why ``face`` can hold neither zero whites nor exactly the oval; None if it can."""
    r0 = settings.completions(chart, region_of(chart, face), limit=1)
    if r0.possible:
        return None
    c2 = with_oval(chart, face)
    r2 = settings.completions(c2, region_of(c2, face), limit=1)
    if r2.possible:
        return None
    return f"no completion without whites ({r0.reason()}); none around the oval ({r2.reason()})"


def _disk_rule(rule_id: str, matches: Callable[[DiskInfo], str | None]):
    """A rule that fires on a disk pattern and re-verifies it by ``overflow``."""

    def applies(cfg: Configuration, settings: Settings) -> bool:
        return not cfg.has_oval and any(matches(i) for i in cfg.disks)

    def conclude(cfg: Configuration, settings: Settings) -> RuleVerdict:
        seen = []
        for info in cfg.disks:
            what = matches(info)
            if not what:
                continue
            why = overflow(cfg.chart, info.face, settings)
            if why:
                return RuleVerdict(REFUTED, rule_id, info.where, f"{what}; {why}")
            seen.append(info.where)
        return RuleVerdict(SURVIVES, rule_id, ", ".join(seen), "pattern present but its face completes")

    return applies, conclude


def _names(pairs) -> str:
    return ",".join(a for a, _ in pairs)


def _m_l8_1(i: DiskInfo) -> str | None:
    d = i.disk
    if d.k != 2 or d.feeler_count or len(i.off_senses) != 2:
        return None
    (a1, s1), (a2, s2) = i.off_senses
    if s1 != s2:
        return None
    return f"feelerless 2-angled disk, off-disk edges {a1},{a2} both {s1}ward"


def _m_l10_2(i: DiskInfo) -> str | None:
    d = i.disk
    return "feelerless 2-angled disk with coherent boundary" if d.k == 2 and not d.feeler_count and i.coherent else None


def _m_l9_1(i: DiskInfo) -> str | None:
    d = i.disk
    return "feelerless 3-angled disk with coherent boundary" if d.k == 3 and not d.feeler_count and i.coherent else None


def _m_l11_1(i: DiskInfo) -> str | None:
    d = i.disk
    if d.k == 2 and d.special and d.feeler_count == 1:
        return f"special 2-angled disk with one feeler {_names(i.feeler_senses)}"
    return None


def _m_l12_1(i: DiskInfo) -> str | None:
    d = i.disk
    if d.k == 3 and d.special and d.feeler_count >= 1:
        return f"special 3-angled disk with feelers {_names(i.feeler_senses)}"
    return None


def _m_l13_1(i: DiskInfo) -> str | None:
    d = i.disk
    if d.k not in (4, 5) or not d.special or d.feeler_count != 2:
        return None
    (f1, s1), (f2, s2) = i.feeler_senses
    if s1 != s2:
        return None
    return f"special {d.k}-angled disk, feelers {f1},{f2} both {s1}ward"


def _m_l13_2(i: DiskInfo) -> str | None:
    d = i.disk
    if d.k == 5 and d.special and d.feeler_count == 3:
        return f"special 5-angled disk with three feelers {_names(i.feeler_senses)}"
    return None


# -- whole-configuration rules ----------------------------------------------------------


def _io_applies(cfg: Configuration, settings: Settings) -> bool:
    return True


def _io_conclude(cfg: Configuration, settings: Settings) -> RuleVerdict:
    chart = cfg.chart
    ovals = oval_whites(chart)
    for dom in sorted(chart.domains(), key=lambda d: min(d.walks)):
        key = min(dom.walks)
        sheet = io_balance(chart, dom, UPPER)
        if sheet.can_balance:
            continue
        holds_oval = any(v in ovals for w in dom.walks for v in _walk_vertices(chart, w))
        if holds_oval:
            note = "the oval inside adds as many forced inward as outward darts"
        elif cfg.has_oval:
            note = "all seven whites already lie elsewhere"
        else:
            sheet2 = io_balance(c2 := with_oval(chart, key), region_of(c2, key), UPPER)
            if sheet2.can_balance:
                continue
            note = "placing the oval here leaves it unbalanced"
        return RuleVerdict(REFUTED, "L6.3-io", f"domain {key}", f"{io_witness(sheet)}; {note}")
    return RuleVerdict(SURVIVES, "L6.3-io", "", "every domain can balance")


def _walk_vertices(chart: Chart, key: str) -> set[str]:
    return {chart.darts[d].vertex for d in chart.face_walks[key]}


def _needy_faces(cfg: Configuration, settings: Settings) -> list[tuple[str, str]]:
    out = []
    for dom in sorted(cfg.chart.domains(), key=lambda d: min(d.walks)):
        r = settings.completions(cfg.chart, dom, limit=1)
        if not r.possible:
            out.append((min(dom.walks), r.reason()))
    return out


def _l63b_applies(cfg: Configuration, settings: Settings) -> bool:
    return not cfg.has_oval


def _l63b_conclude(cfg: Configuration, settings: Settings) -> RuleVerdict:
    needy = _needy_faces(cfg, settings)
    if len(needy) >= 2:
        keys = ", ".join(k for k, _ in needy)
        return RuleVerdict(
            REFUTED, "L6.3b", keys,
            f"faces {keys} each need whites but the oval's two whites share one face; "
            + "; ".join(f"{k}: {r}" for k, r in needy),
        )
    facts = tuple(f"oval in face {k}" for k, _ in needy)
    return RuleVerdict(CONSTRAINED if needy else SURVIVES, "L6.3b", "", f"{len(needy)} face(s) need whites", facts)


def _lens_applies(cfg: Configuration, settings: Settings) -> bool:
    return bool(detect_lenses(cfg.chart, M))


def _lens_conclude(cfg: Configuration, settings: Settings) -> RuleVerdict:
    lenses = detect_lenses(cfg.chart, M)
    rank = {e: i for i, e in enumerate(cfg.focus)}
    best = min(lenses, key=lambda l: (rank.get(l.upper, len(rank)), l.upper, l.lower))
    return RuleVerdict(
        REFUTED, LENS_RULE, f"{best.whites[0]}-{best.whites[1]}",
        f"{best.upper} ∪ {best.lower} bounds a lens (condition {best.condition})",
    )


def _loop_applies(cfg: Configuration, settings: Settings) -> bool:
    return any(_is_loop(cfg.chart, e) for e in cfg.chart.edges)


def _is_loop(chart: Chart, eid: str) -> bool:
    e = chart.edges[eid]
    if e.closed:
        return False
    a, b = chart.darts[e.tail].vertex, chart.darts[e.head].vertex
    return a == b and chart.vertices[a].kind == Kind.WHITE


def _loop_conclude(cfg: Configuration, settings: Settings) -> RuleVerdict:
    eid = min(e for e in cfg.chart.edges if _is_loop(cfg.chart, e))
    return RuleVerdict(REFUTED, LOOP_RULE, eid, f"edge {eid} is a loop")


def _refinement(graph: str) -> str | None:
    for name in REFINED:
        if golden(name).meta.get("refines") == graph:
            return name
    return None


def _l72_applies(cfg: Configuration, settings: Settings) -> bool:
    return cfg.component is not None and _refinement(cfg.graph) is not None


def _l72_conclude(cfg: Configuration, settings: Settings) -> RuleVerdict:
    ref_name = _refinement(cfg.graph)
    ref = golden(ref_name)
    pattern = ref.meta.get("pattern", "all")
    edges = None if pattern == "all" else pattern.split(",")
    if matches_pattern(cfg.component, component_of(ref), edges):
        return RuleVerdict(
            CONSTRAINED, "L7.2", cfg.graph, f"orientation in the RO-family of {ref_name} (edges {pattern})",
            (f"refines {ref_name}",),
        )
    return RuleVerdict(REFUTED, "L7.2", cfg.graph, f"orientation outside the RO-family of {ref_name}")


def _planarity_applies(cfg: Configuration, settings: Settings) -> bool:
    return bool(cfg.pending)


def _planarity_conclude(cfg: Configuration, settings: Settings) -> RuleVerdict:
    chart = cfg.chart
    ends = {d for p in cfg.pending for d in p}
    for dom in chart.domains():
        bds = {b.dart: b for b in boundary_darts(chart, dom, UPPER)}
        if not ends & set(bds):
            continue
        pairs = [(bds[a], bds[b]) for a, b in cfg.pending if a in bds and b in bds]
        if len(pairs) * 2 != len(ends & set(bds)):
            return RuleVerdict(REFUTED, "planarity", min(dom.walks), "arc ends lie in different domains")
        lengths = [len(w) for w in region_walks(chart, dom)]
        if not realizable(pairs, lengths):
            arcs = ", ".join(f"{a}->{b}" for a, b in cfg.pending)
            return RuleVerdict(REFUTED, "planarity", min(dom.walks), f"arcs {arcs} would cross")
    return RuleVerdict(SURVIVES, "planarity", "", "arcs drawable")


def _never(cfg: Configuration, settings: Settings) -> bool:
    return False


def _no_op(rule_id: str):
    return lambda cfg, settings: RuleVerdict(NOOP, rule_id)


def _axiom(rule_id: str, citation: str) -> Rule:
    return Rule(rule_id, AXIOM, citation, _never, _no_op(rule_id))


def _derived(rule_id: str, citation: str, matcher) -> Rule:
    applies, conclude = _disk_rule(rule_id, matcher)
    return Rule(rule_id, DERIVED, citation, applies, conclude)


RULES: dict[str, Rule] = {
    r.id: r
    for r in [
        _axiom("L3.1-axiom", "a 2-angled disk with at most one feeler and no whites inside carries one of two small pseudo charts near it"),
        _axiom("L3.3-axiom", "at a BW-vertex the two non-terminal edges of the label point the same way"),
        _axiom("L3.5-axiom", "a 2-angled disk with two feelers bounded by an oval holds at least two whites"),
        _axiom("L4.1-axiom", "an empty special 3-angled disk, locally minimal, carries one of two small pseudo charts up to RO"),
        _axiom("L4.2-axiom", "a special 3-angled disk with a feeler holds a white once the chart is taken locally minimal there"),
        _axiom("L5.1-axiom", "a component with whites has at least two; with at most three and no loop it is a theta, an oval or a skew theta"),
        Rule(LOOP_RULE, AXIOM, "no loop in a minimal chart with seven whites", _loop_applies, _loop_conclude),
        _axiom("L6.2-axiom", "type (m;n) forces a ring or a non-simple hoop of label m-1 or m+2"),
        _axiom("L7.1-axiom", "a loopless five-white component is one of nine graphs"),
        Rule(LENS_RULE, AXIOM, "no lens in a minimal chart with at most seven whites", _lens_applies, _lens_conclude),
        Rule("L7.2", DERIVED, "orientations of the five-white graphs, checked against the refined references",
             _l72_applies, _l72_conclude),
        _derived("L8.1", "off-disk edges at a feelerless 2-angled disk point opposite ways", _m_l8_1),
        _derived("L9.1", "no feelerless 3-angled disk with coherent boundary", _m_l9_1),
        _derived("L10.2", "no feelerless 2-angled disk with coherent boundary", _m_l10_2),
        _derived("L11.1", "no special 2-angled disk with exactly one feeler", _m_l11_1),
        _derived("L12.1", "a special 3-angled disk has no feelers", _m_l12_1),
        _derived("L13.1", "two feelers of a special 4- or 5-angled disk point opposite ways", _m_l13_1),
        _derived("L13.2", "no special 5-angled disk with exactly three feelers", _m_l13_2),
        Rule("L6.3-io", DERIVED, "a domain whose stubs cannot balance needs whites the count does not allow",
             _io_applies, _io_conclude),
        Rule("L6.3b", DERIVED, "only one face of the five-white component holds whites, exactly the oval's two",
             _l63b_applies, _l63b_conclude),
        Rule("planarity", DERIVED, "arcs of one label inside a domain are disjoint", _planarity_applies,
             _planarity_conclude),
    ]
}

SWEEP = ("L8.1", "L10.2", "L9.1", "L11.1", "L12.1", "L13.1", "L13.2", "L6.3-io", "L6.3b")

# hand-written plans: the rules each elimination argument uses, in its order
PLANS: dict[str, tuple[str, ...]] = {
    "fig12a": ("L7.2", "L8.1"),
    "fig12b": ("L7.2", "L12.1", "L13.2", "L13.1", "L6.3b", "L6.3-io"),
    "fig12c": ("L7.2", "L13.1", "L6.3-io"),
    "fig12d": ("L7.2", "L8.1"),
    "fig12e": ("L7.2", "L10.2", "L12.1", "L6.3b"),
    "fig12f": ("L9.1",),
    "fig12g": ("L7.2",) + SWEEP,
    "fig12h": ("L7.2", "L11.1", "L6.3-io"),
    "fig12i": ("L10.2", "L9.1"),
}

LEMMA_OF = {
    "fig12a": "L8.2", "fig12b": "L13.3", "fig12c": "L14.1", "fig12d": "L8.3", "fig12e": "L12.2",
    "fig12f": "L9.2", "fig12g": "P14.2", "fig12h": "L11.2", "fig12i": "L10.3",
}


# -- branches --------------------------------------------------------------------------


def terminal_flips(comp: AbstractComponent) -> list[tuple[str, AbstractComponent]]:
    """The two corners of each terminal edge, as (bits, component) pairs.

    Bit i set means the i-th BW-vertex has its terminal edge moved to the
    other side: the two internal darts swap around it.
    """
    bw = [v for v in range(comp.whites) if comp.terminal_dart(v) is not None]
    out = []
    for bits in itertools.product((0, 1), repeat=len(bw)):
        rot = list(comp.rotation)
        for v, b in zip(bw, bits):
            if b:
                r = rot[v]
                i = r.index(comp.terminal_dart(v))
                r = r[i:] + r[:i]
                rot[v] = (r[0], r[2], r[1])
        code = "".join(map(str, bits)) or "-"
        out.append((code, AbstractComponent(comp.whites, tuple(rot), comp.twin, comp.direction, comp.names)))
    return out


def configurations(graph: str) -> list[Configuration]:
    """Every orientation class times every terminal placement of a five-white graph."""
    base = component_of(golden(graph)).with_direction(None)
    names = dict(enumerate(base.names)) if base.names else None
    out = []
    for i, oriented in enumerate(orientations(base).values(), 1):
        for bits, placed in terminal_flips(oriented):
            branch = f"{graph}/o{i}/p{bits}"
            chart = stub_chart(placed, vertex_names=vertex_names(placed), edge_names=names, name=branch)
            out.append(Configuration(graph, branch, chart, placed))
    return out


@dataclass
class Elimination:
    graph: str
    verdict: RuleVerdict
    trace: list[TraceRecord]
    survivors: list[Configuration]
    sweep_survivors: list[Configuration]
    configs: dict[str, Configuration]
    settings: Settings

    @property
    def agrees(self) -> bool:
        return [c.branch for c in self.survivors] == [c.branch for c in self.sweep_survivors]

    def text(self) -> str:
        return "\n".join(str(r) for r in self.trace) + "\n"


def _run_plan(cfg: Configuration, plan: Sequence[str], settings: Settings, path: str,
              trace: list[TraceRecord]) -> RuleVerdict | None:
    """Apply rules in order; the refuting verdict, or None if the branch survives."""
    for rid in plan:
        v = apply_rule(RULES[rid], cfg, settings)
        if v.outcome == NOOP:
            continue
        trace.append(TraceRecord(path, rid, v.outcome, _located(v)))
        if v.refuted:
            return v
    return None


def _located(v: RuleVerdict) -> str:
    return f"{v.location}: {v.witness}" if v.location else v.witness


def eliminate_fig12(graph: str, *, disabled: Iterable[str] = ()) -> Elimination:
    """Exhaust the orientation and terminal-placement branches of one graph.

    Each branch runs the hand-written plan and, independently, the full
    rule sweep; the two must leave the same branches standing.
    """
    if not graph.startswith("fig12"):
        graph = f"fig12{graph}"
    if graph not in FIVE:
        raise ValueError(f"unknown graph {graph!r}")
    settings = Settings(frozenset(disabled))
    cfgs = configurations(graph)
    trace: list[TraceRecord] = []
    survivors, sweep_survivors, used = [], [], set()
    for cfg in cfgs:
        tail = cfg.branch[len(graph) + 1:]
        v = _run_plan(cfg, PLANS[graph], settings, f"{graph}/plan/{tail}", trace)
        if v is None:
            survivors.append(cfg)
            trace.append(TraceRecord(f"{graph}/plan/{tail}", "-", SURVIVES, "no rule refutes this branch"))
        else:
            used.add(v.rule)
        if _run_plan(cfg, SWEEP, settings, f"{graph}/sweep/{tail}", trace) is None:
            sweep_survivors.append(cfg)
            trace.append(TraceRecord(f"{graph}/sweep/{tail}", "-", SURVIVES, "no rule refutes this branch"))
    n = len(cfgs)
    agree = [c.branch for c in survivors] == [c.branch for c in sweep_survivors]
    tag = "plan and sweep agree" if agree else "plan and sweep DISAGREE"
    rule = "+".join(sorted(used)) or LEMMA_OF[graph]
    if survivors:
        verdict = RuleVerdict(SURVIVES, LEMMA_OF[graph], graph,
                              f"{len(survivors)} of {n} branches survive ({tag})")
    elif n == 0:
        verdict = RuleVerdict(REFUTED, LEMMA_OF[graph], graph, "no branch exists (vacuous)")
    else:
        verdict = RuleVerdict(REFUTED, rule, graph, f"all {n} branches refuted ({tag})")
    by_branch = {c.branch: c for c in cfgs}
    trace.append(TraceRecord(graph, LEMMA_OF[graph], verdict.outcome, verdict.witness,
                             _summary_check(tuple(trace), by_branch, settings)))
    return Elimination(graph, verdict, trace, survivors, sweep_survivors, by_branch, settings)


def replay(trace: Sequence[TraceRecord], configs: dict[str, Configuration],
           settings: Settings | None = None) -> list[str]:
    """Re-verify every refuted record; returns the records that fail to replay.

    A record on a configuration branch is re-derived by applying its rule
    to the rebuilt configuration; a scripted record runs its own check.
    """
    settings = settings or Settings()
    bad = []
    for rec in trace:
        if rec.verdict != REFUTED:
            continue
        if rec.check is not None:
            if not rec.check():
                bad.append(str(rec))
            continue
        cfg = configs.get(_config_key(rec.branch))
        if cfg is None or rec.rule not in RULES:
            bad.append(str(rec))
            continue
        v = apply_rule(RULES[rec.rule], cfg, settings)
        if not v.refuted or _located(v) != rec.witness:
            bad.append(str(rec))
    return bad


def _summary_check(records: tuple[TraceRecord, ...], configs: dict[str, Configuration], settings: Settings):
    """A check that every branch below a summary record was refuted and replays."""

    def check() -> bool:
        if any(r.rule == "-" and r.verdict == SURVIVES for r in records):
            return False
        return not replay(records, configs, settings)

    return check


def _config_key(path: str) -> str:
    parts = path.split("/")
    if len(parts) == 4 and parts[1] in ("plan", "sweep"):
        return "/".join([parts[0], parts[2], parts[3]])
    return path


# -- type refinement -------------------------------------------------------------------


def partitions(total: int, smallest: int = 2, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = total if largest is None else largest
    if total == 0:
        return [()]
    out = []
    for p in range(min(total, largest), smallest - 1, -1):
        out.extend((p,) + rest for rest in partitions(total - p, smallest, p))
    return out


@dataclass
class TypeReport:
    hypothesis: tuple[int, ...]
    verdict: RuleVerdict
    facts: tuple[str, ...]
    trace: list[TraceRecord]


def _small_branches(name: str) -> list[Chart]:
    base = component_of(golden(name)).with_direction(None)
    out = []
    for oriented in orientations(base).values():
        for _, placed in terminal_flips(oriented):
            out.append(stub_chart(placed))
    return out


def _skew_theta_claims(settings: Settings) -> tuple[bool, bool, bool]:
    """(feeler disk needs whites, digon needs whites, digon refuses the oval) in every branch."""
    c1 = c2 = c3 = True
    for chart in _small_branches("fig5c"):
        infos = _disk_infos(chart)
        feeler = [i for i in infos if i.disk.k == 3 and i.disk.special and i.disk.feeler_count == 1]
        digon = [i for i in infos if i.disk.k == 2 and not i.disk.feeler_count]
        if len(feeler) != 1 or len(digon) != 1:
            return False, False, False
        c1 &= not settings.completions(chart, region_of(chart, feeler[0].face), limit=1).possible
        c2 &= not settings.completions(chart, region_of(chart, digon[0].face), limit=1).possible
        c3 &= overflow(chart, digon[0].face, settings) is not None
    return c1, c2, c3


def _theta_needs_whites(settings: Settings) -> bool:
    """Every oriented theta has a face that cannot be completed without whites."""
    for chart in _small_branches("fig5a"):
        if all(settings.completions(chart, d, limit=1).possible for d in chart.domains()):
            return False
    return True


def check_type_refinement(target: tuple[int, ...] | Chart, *, label: int = M,
                          disabled: Iterable[str] = ()) -> TypeReport:
    """Replay the type arguments for one hypothesised type of the label subgraph.

    Types (4,3) and (3,2,2) die by white counting around the skew theta,
    type (7) by the ring argument; (5,2) survives with the oval facts.
    """
    from surfchart.subgraph import gamma_type

    settings = Settings(frozenset(disabled))
    hyp = gamma_type(target, label) if isinstance(target, Chart) else tuple(sorted(target, reverse=True))
    path = f"type/{'-'.join(map(str, hyp)) or 'empty'}"
    trace: list[TraceRecord] = []

    def rec(rule: str, verdict: str, witness: str, check=None) -> None:
        trace.append(TraceRecord(path, rule, verdict, witness, check))

    allowed = partitions(TOTAL)
    rec("L5.1-axiom", CONSTRAINED, "every component with whites has at least two")
    if hyp not in allowed:
        w = f"parts of at least 2 summing to {TOTAL}: {allowed}; {hyp} is not one"
        rec("L5.2", REFUTED, w, lambda: hyp not in partitions(TOTAL))
        return TypeReport(hyp, RuleVerdict(REFUTED, "L5.2", path, w), (), trace)
    rec("L5.2", CONSTRAINED, f"type is one of {allowed}")

    if 3 in hyp:
        skew = enumerate_components(3)
        ok = len(skew) == 1 and next(iter(skew)) == _class_code("fig5c")
        rec("L5.1-axiom", CONSTRAINED if ok else SURVIVES,
            "the three-white component is a skew theta (enumeration agrees)" if ok else "enumeration disagrees")
        rec("L4.2-axiom", CONSTRAINED, "hypothesis introduced: the chart is locally minimal at the feeler disk D1")
        c1, c2, c3 = _skew_theta_claims(settings)
        theta = _theta_needs_whites(settings)
        rec("L4.2-axiom", CONSTRAINED, "D1 holds a white, hence a component, hence at least 2 whites")
        rec("L5.4-claim1", CONSTRAINED if c2 else SURVIVES,
            "the digon D2 has no white-free completion in any branch" if c2 else "D2 completes without whites")
        rec("L5.4-claim2", CONSTRAINED if (c3 and theta) else SURVIVES,
            "D2 refuses the oval, and a theta inside needs a further white: D2 holds at least 3")
        count = 3 + 2 + 3
        if c2 and c3 and theta:
            w = f"3 + 2 + 3 = {count} > {TOTAL}"
            rec("L5.4", REFUTED, w, lambda: all(_skew_theta_claims(settings)[1:]) and _theta_needs_whites(settings))
            return TypeReport(hyp, RuleVerdict(REFUTED, "L5.4", path, w), (), trace)
        return TypeReport(hyp, RuleVerdict(SURVIVES, "L5.4", path, "claims not re-established"), (), trace)

    if hyp == (TOTAL,):
        rec("L6.2-axiom", CONSTRAINED, "a ring or non-simple hoop of label m-1 or m+2 exists; two branches")
        rec("L6.1", REFUTED, "branch m-1: both sides of the curve hold whites of label m, so at least two components",
            lambda: len(hyp) == 1)
        rec("L6.3", CONSTRAINED,
            "branch m+2: the label-(m+1) subgraph is of type (5,2); its oval's disk meets two arcs of label m-1")
        w = "both branches give at least two label-m components, contradicting a single component of 7"
        rec("L6.1", REFUTED, w, lambda: len(hyp) == 1)
        return TypeReport(hyp, RuleVerdict(REFUTED, "L6.1", path, w), (), trace)

    facts = (
        "(a) one face F of the five-white component holds exactly 2 whites",
        "(b) every other face holds none",
        f"(c) F holds the oval template {_template()}; which face is F is a branch variable",
        "(d) each face holds 0 or 2 whites",
    )
    theta = _theta_needs_whites(settings)
    rec("L6.3", CONSTRAINED if theta else SURVIVES,
        "the two-white component is not a theta: a theta brings a third white" if theta else "theta not excluded")
    for f in facts:
        rec("L6.3", CONSTRAINED, f)
    return TypeReport(hyp, RuleVerdict(CONSTRAINED, "L6.3", path, "type (5,2) with the oval facts"), facts, trace)


def _template() -> str:
    from surfchart.regions import oval_template

    t = oval_template(M)
    return f"{t.template}(label {t.label}, sign {t.sign:+d})"


def _class_code(name: str) -> str:
    from surfchart.references import reference_codes

    return reference_codes()[golden(name).meta["class"]]


# -- gluing: the surviving configuration meets its oval ---------------------------------------


def _edge_between(chart: Chart, a: str, b: str) -> list[str]:
    return sorted(
        e.id for e in chart.edges.values()
        if e.label == M and not e.closed and {chart.darts[e.tail].vertex, chart.darts[e.head].vertex} == {a, b}
    )


def _across(walk: Sequence[str], chart: Chart, x: str, edge: str) -> str | None:
    """The dart two steps from ``x`` along the walk, if the step between lies on ``edge``."""
    i, n = walk.index(x), len(walk)
    for step in (1, -1):
        mid = walk[(i + step) % n]
        if chart.darts[mid].edge == edge:
            return walk[(i + 2 * step) % n]
    return None


def gluing_notation(chart: Chart) -> dict[str, str] | None:
    """Names for the vertices, edges and stubs of the surviving five-white configuration.

    Returns an old-id -> new-id map, or None when the configuration does
    not have the two feelerless disks this argument starts from.
    """
    infos = _disk_infos(chart)
    d1 = [i for i in infos if i.disk.k == 2 and not i.disk.feeler_count]
    d2 = [i for i in infos if i.disk.k == 3 and not i.disk.feeler_count]
    if len(d1) != 1 or len(d2) != 1:
        return None
    d1, d2 = d1[0], d2[0]
    faces = set(chart.face_walks)
    rest = sorted(faces - {d1.face, d2.face})
    if len(rest) != 1:
        return None
    a_key = rest[0]
    walk = chart.face_walks[a_key]
    bw = {}
    for e in chart.edges.values():
        for x, y in ((e.tail, e.head), (e.head, e.tail)):
            if chart.vertices[chart.darts[y].vertex].kind == Kind.BLACK:
                bw[chart.darts[x].vertex] = x
    w1 = next(v for v in d1.disk.whites if v in bw)
    w2 = next(v for v in d1.disk.whites if v != w1)
    w3 = next(v for v in d2.disk.whites if v not in bw)
    t1 = chart.darts[bw[w1]].direction
    w4 = w5 = None
    for v in d2.disk.whites:
        if v == w3:
            continue
        (e,) = _edge_between(chart, w3, v)
        at_w3 = OUT if chart.darts[chart.edges[e].tail].vertex == w3 else IN
        if at_w3 == flip(t1):
            w4 = v
        else:
            w5 = v
    if w4 is None or w5 is None:
        return None

    def stubs(v: str, face: str) -> list[str]:
        return [d for d in chart.vertices[v].rotation if chart.is_stub(d) and chart.walk_of[d] == face]

    names: dict[str, str] = {}
    vmap = {w1: "w1", w2: "w2", w3: "w3", w4: "w4", w5: "w5"}
    for old, new in list(vmap.items()):
        if old in bw:
            black = chart.darts[chart.twin(bw[old])].vertex
            vmap[black] = "b" + new[1:]
            names[chart.darts[bw[old]].edge] = "t" + new[1:]
    (e3,) = _edge_between(chart, w2, w3)
    (e4,) = _edge_between(chart, w3, w4)
    (e5,) = _edge_between(chart, w4, w5)
    (e6,) = _edge_between(chart, w3, w5)
    names.update({e3: "e3", e4: "e4", e5: "e5", e6: "e6"})
    mid3 = next(d for d in stubs(w3, a_key) if chart.is_middle(d))
    non3 = next(d for d in stubs(w3, a_key) if not chart.is_middle(d))
    a2 = stubs(w2, a_key)
    s2b = [x for x in a2 if _across(walk, chart, x, e3) == mid3]
    if len(s2b) != 1 or len(a2) != 2:
        return None
    s2a = next(x for x in a2 if x != s2b[0])
    i = walk.index(s2a)
    digon = set(_edge_between(chart, w1, w2))
    near = [chart.darts[walk[(i + s) % len(walk)]].edge for s in (1, -1)]
    (e1,) = [e for e in near if e in digon]
    (e2,) = digon - {e1}
    names.update({e1: "e1", e2: "e2"})
    s1a = _across(walk, chart, s2a, e1)
    a4 = stubs(w4, a_key)
    s4a = next((x for x in a4 if chart.darts[_across(walk, chart, x, e5) or x].vertex == w5), None)
    if s1a is None or s4a is None:
        return None
    s5a = _across(walk, chart, s4a, e5)
    stub_names = {
        s2a: "e2'", s2b[0]: "e2''", non3: "e3'", mid3: "e3'''", s1a: "e1'", s4a: "e4'", s5a: "e5'",
    }
    for v, tag in ((w1, "1"), (w4, "4"), (w5, "5")):
        for d in stubs(v, a_key):
            stub_names.setdefault(d, f"e{tag}''")
    for v, tag, face in ((w1, "1", d1.face), (w2, "2", d1.face), (w3, "3", d2.face), (w4, "4", d2.face),
                         (w5, "5", d2.face)):
        (d,) = stubs(v, face)
        stub_names[d] = f"e{tag}''" if tag == "3" else f"e{tag}'''"
    out = {f"v:{k}": v for k, v in vmap.items()}
    out.update({f"e:{k}": v for k, v in names.items()})
    for d, n in stub_names.items():
        out[f"s:{d}"] = f"{n}.{vmap[chart.darts[d].vertex]}"
    out["face:A"] = a_key
    out["face:D1"] = d1.face
    out["face:D2"] = d2.face
    return out


def relabel(chart: Chart, notation: dict[str, str]) -> Chart:
    vmap = {k[2:]: v for k, v in notation.items() if k.startswith("v:")}
    emap = {k[2:]: v for k, v in notation.items() if k.startswith("e:")}
    smap = {k[2:]: v for k, v in notation.items() if k.startswith("s:")}

    def dart(d: str) -> str:
        if d in smap:
            return smap[d]
        x = chart.darts[d]
        return f"{emap[x.edge]}.{vmap[x.vertex]}"

    vs = [(vmap[v.id], v.kind.value, [dart(d) for d in v.rotation]) for v in chart.vertices.values()]
    es = [(emap[e.id], e.label, dart(e.tail), dart(e.head)) for e in chart.edges.values()]
    st = [Stub(smap[d.id], d.label, d.direction) for d in chart.stubs]
    return assemble(chart.degree, vs, es, stubs=st, name="fig29a", meta=chart.meta)


GLUE_OVAL = ("w6", "w7", "b6", "b7")
OVAL_STUBS = {"w6.s1": "e6'.w6", "w6.s2": "e6''.w6", "w6.s3": "e6'''.w6",
              "w7.s2": "e7'.w7", "w7.s3": "e7''.w7", "w7.s1": "e7'''.w7"}
CASES = (("i", "w1"), ("ii", "w5"), ("iii", "w6"))


def _glue_oval() -> Chart:
    oval = stub_chart(oval_component(), vertex_names=GLUE_OVAL,
                      edge_names={0: "d1", 2: "d2", 4: "t6", 6: "t7"}, name="oval")
    vs, es, st = specs_of(oval)
    ren = lambda d: OVAL_STUBS.get(d, d)  # noqa: E731
    vs = [(v, k, [ren(d) for d in rot]) for v, k, rot in vs]
    st = [Stub(ren(s.dart), s.label, s.direction) for s in st]
    return assemble(3, vs, es, stubs=st, name="oval")


def _stub_name(dart: str) -> str:
    return dart.rsplit(".", 1)[0]


@dataclass
class Candidate:
    chart: Chart
    pairs: tuple[tuple[str, str], ...]
    v1: str
    claim1: bool
    claim2: bool


def _upper_structure(full: Chart):
    """(v1, v2, v3, third edge, parallel pair, triangle) of the five-white label-(m+1) component."""
    sub = extract(full, UPPER)
    comps = [c for c in components(sub, full) if len(c.whites) == 5]
    if len(comps) != 1:
        return None
    comp = comps[0]
    ends = {}
    for aid in comp.arcs:
        a = sub.arc(aid)
        ends[aid] = (full.darts[a.start].vertex, full.darts[a.end].vertex)
    internal = {a: e for a, e in ends.items() if all(full.vertices[v].kind == Kind.WHITE for v in e)}
    pairs = [(a, b) for a, b in itertools.combinations(sorted(internal), 2)
             if set(internal[a]) == set(internal[b])]
    if len(pairs) != 1:
        return None
    c = pairs[0]
    bw = {v for a, e in ends.items() if a not in internal for v in e if full.vertices[v].kind == Kind.WHITE}
    x, y = internal[c[0]]
    v1, v2 = (x, y) if x in bw else (y, x)
    third = [a for a, e in internal.items() if a not in c and v2 in e]
    if len(third) != 1:
        return None
    e = third[0]
    v3 = next(v for v in internal[e] if v != v2)
    tri = sorted(a for a in internal if a not in c and a != e and v2 not in internal[a])
    return v1, v2, v3, e, c, tri


def _beside(chart: Chart, lower: str, upper: str) -> bool:
    """Whether two edges with the same ends bound a disk with no edge inside at either end."""
    lo, up = chart.edges[lower], chart.edges[upper]
    at = {chart.darts[d].vertex: d for d in (lo.tail, lo.head)}
    bt = {chart.darts[d].vertex: d for d in (up.tail, up.head)}
    if set(at) != set(bt) or len(at) != 2:
        return False
    x, y = sorted(at)
    a1, b1, c1, c2 = at[x], at[y], bt[x], bt[y]
    return (chart.succ(c1) == a1 and chart.succ(b1) == c2) or (chart.succ(a1) == c1 and chart.succ(c2) == b1)


def _upper_facts(full: Chart, structure) -> bool:
    """Facts (2)-(4) of the one-label-up configuration.

    (2) the third edge e at v2 is middle at v2; (3) a label-m edge e'
    joins v3 to another white of the triangle; (4) some label-(m+1) edge
    runs beside e' so that the two bound an empty disk.
    """
    v1, v2, v3, e, c, tri = structure
    if not full.edge_middle_at(e, v2):
        return False
    others = {full.darts[d].vertex for a in tri for d in (full.edges[a].tail, full.edges[a].head)} - {v3}
    for x in sorted(others):
        for lower in _edge_between(full, v3, x):
            if any(
                f.label == UPPER and not f.closed and _beside(full, lower, f.id)
                for f in full.edges.values()
            ):
                return True
    return False


def _classes(full: Chart) -> list[str]:
    sub = extract(full, UPPER)
    return sorted(classify_component(full, sub, c)[0] for c in components(sub, full) if c.whites)


def _completions(chart: Chart, settings: Settings, forbid_lens: bool):
    per = []
    for dom in sorted(chart.domains(), key=lambda d: min(d.walks)):
        r = region_completions(chart, dom, UPPER, forbid_lens=forbid_lens, forbid_loop=settings.forbid_loop)
        per.append(r.completions)
    for combo in itertools.product(*per):
        pairs = tuple(p for c in combo for p in c.pairs)
        terms = tuple(t for c in combo for t in c.terminals)
        yield pairs, terms


def _draw(chart: Chart, pairs, terms=(), host: str | None = None) -> Chart:
    names = {d: _stub_name(d) for p in pairs for d in p[:1]}
    names.update({d: _stub_name(d) for d in terms})
    return draw_completion(chart, pairs, terms, names=names, host=host)


@dataclass
class TheoremReport:
    verdict: str
    refuted: bool
    trace: list[TraceRecord]
    eliminations: dict[str, Elimination]
    types: dict[tuple[int, ...], TypeReport]
    cases: dict[str, RuleVerdict]
    survivors: list[Configuration]
    configs: dict[str, Configuration]
    settings: Settings

    def text(self) -> str:
        return "\n".join(str(r) for r in self.trace) + f"\n{self.verdict}\n"


def run_pipeline(*, disabled: Iterable[str] = (), graphs: Sequence[str] | None = None) -> TheoremReport:
    """Types, then the nine eliminations, then the gluing cases for what survives.

    ``graphs`` restricts the eliminations (the enumeration is taken to
    have produced only these graphs).
    """
    settings = Settings(frozenset(disabled))
    trace: list[TraceRecord] = []
    configs: dict[str, Configuration] = {}

    types = {}
    for hyp in partitions(TOTAL):
        rep = check_type_refinement(hyp, disabled=settings.disabled)
        types[hyp] = rep
        trace.extend(rep.trace)
    type_ok = all(types[h].verdict.refuted for h in types if h != (5, 2))
    trace.append(TraceRecord("type", "L6.3", CONSTRAINED if type_ok else SURVIVES,
                             "both label-m and label-(m+1) subgraphs are of type (5,2) (the same argument per label)"))

    names = [g if g.startswith("fig12") else f"fig12{g}" for g in (graphs or FIVE)]
    elims = {}
    survivors: list[Configuration] = []
    for g in names:
        el = eliminate_fig12(g, disabled=settings.disabled)
        elims[g] = el
        trace.extend(el.trace)
        configs.update(el.configs)
        survivors.extend(el.survivors)
    others = [c for c in survivors if c.graph != "fig12g"]
    trace.append(TraceRecord("P14.2", "P14.2", CONSTRAINED if not others else SURVIVES,
                             f"surviving graphs: {sorted({c.graph for c in survivors}) or 'none'}"))
    trace.append(TraceRecord("P14.2", "P14.2-upper", CONSTRAINED,
                             "the label-(m+1) subgraph holds a fig12g component and an oval"
                             " (taken as stated, by the same argument one label up)"))

    cases: dict[str, RuleVerdict] = {}
    left: list[Configuration] = list(others)
    for cfg in [c for c in survivors if c.graph == "fig12g"]:
        res, rest = _glue(cfg, settings, trace, configs)
        cases.update(res)
        left.extend(rest)
    problems = [c.branch for c in left]
    if not type_ok:
        problems.append("type refinement")
    if not cases:
        problems.append("no gluing case ran")
    refuted = not problems and all(v.refuted for v in cases.values())
    verdict = THEOREM if refuted else "pipeline failure: surviving " + ", ".join(problems)
    recs = tuple(trace)
    verdicts = tuple(cases.values())
    check = (lambda: not replay(recs, configs, settings) and all(v.refuted for v in verdicts)) if refuted else None
    trace.append(TraceRecord("theorem", "T1.1", REFUTED if refuted else SURVIVES, verdict, check))
    return TheoremReport(verdict, refuted, trace, elims, types, cases, left, configs, settings)


def _glue(cfg: Configuration, settings: Settings, trace: list[TraceRecord],
          configs: dict[str, Configuration]) -> tuple[dict[str, RuleVerdict], list[Configuration]]:
    root = f"theorem/{cfg.branch}"

    def rec(path, rule, verdict, witness, check=None):
        trace.append(TraceRecord(path, rule, verdict, witness, check))

    notation = gluing_notation(cfg.chart)
    if notation is None:
        rec(root, "L15.1", SURVIVES, "the two feelerless disks are missing; no gluing script applies")
        return {}, [cfg]
    g = relabel(cfg.chart, notation)
    a_key = g.face_key("e2'.w2")
    d1, d2 = g.face_key("e1'''.w1"), g.face_key("e3''.w3")
    need_a = settings.completions(g, region_of(g, a_key), limit=1)
    ok_d = [settings.completions(g, region_of(g, k), limit=1).possible for k in (d1, d2)]
    mid_ok = g.edge_middle_at("e3", "w2") and not g.edge_middle_at("e3", "w3")
    rec(root, "L15.1", CONSTRAINED,
        f"D1 = face {d1} (2-angled), D2 = face {d2} (3-angled), both feelerless and completable: {ok_d}; "
        f"e3 middle at w2, not at w3: {mid_ok}; A = face {a_key} needs whites ({need_a.reason()}), so the oval lies in A")
    g0 = with_oval(g, a_key, _glue_oval())
    base = Configuration("fig12g", f"{root}/glue", g0, cfg.component, ("oval in A",))
    configs[base.branch] = base

    # every completion, lenses allowed, filtered by the label-(m+1) structure
    cands: list[Candidate] = []
    total = 0
    for pairs, terms in _completions(g0, settings, forbid_lens=False):
        total += 1
        full = _draw(g0, pairs, terms, host=None)
        if _classes(full) != ["fig12g", "oval"]:
            continue
        s = _upper_structure(full)
        if s is None:
            continue
        v1, v2, v3, e, c, tri = s
        if not _upper_facts(full, s):
            continue
        claim1 = (e, v3, v2) == ("e3''", "w3", "w4")
        e2b = full.edges.get("e2''")
        claim2 = (set(c) == {"e4'", "e4''"} and e2b is not None and e2b.head == "e3'''.w3"
                  and set(tri) == {"e2'", "e2''", "e3'"})
        cands.append(Candidate(full, pairs, v1, claim1, claim2))
    rec(f"{root}/claims", "P14.2-upper", CONSTRAINED,
        f"{len(cands)} of {total} completions have label-(m+1) subgraph fig12g + oval"
        " and meet facts (2)-(4) on e, e' and the disk D")
    rec(f"{root}/claims", "T1.1-claim1", CONSTRAINED if all(c.claim1 for c in cands) else SURVIVES,
        f"e3'' = e, w3 = v3, w4 = v2 in {sum(c.claim1 for c in cands)} of {len(cands)}")
    rec(f"{root}/claims", "T1.1-claim2", CONSTRAINED if all(c.claim2 for c in cands) else SURVIVES,
        f"C = e4' ∪ e4'', e3''' = e2'', C' = e3' ∪ e3''' ∪ e2' in {sum(c.claim2 for c in cands)} of {len(cands)}")

    # v1 takes both edges of C, which leave w4 outward
    annulus = region_of(g0, a_key)
    bds = {b.dart: b for b in boundary_darts(g0, annulus, UPPER)}
    pool = sorted({
        b.vertex for b in bds.values()
        if b.vertex != "w4" and sum(x.vertex == b.vertex and x.direction == IN for x in bds.values()) >= 2
    })
    covered = sorted(v for _, v in CASES)
    rec(f"{root}/cases", "T1.1-cases", CONSTRAINED if pool == covered else SURVIVES,
        f"whites with two inward stubs in A besides v2: {pool}; cases cover {covered}")
    results: dict[str, RuleVerdict] = {}
    left: list[Configuration] = []
    if pool != covered:
        left.append(base)
    for case, v1 in CASES:
        v, rest = _glue_case(case, v1, base, bds, cands, settings, trace, configs)
        results[case] = v
        left.extend(rest)

    lens_free = sum(1 for _ in _completions(g0, settings, forbid_lens=settings.forbid_lens))
    if settings.forbid_lens:
        rec(f"{root}/sweep", "T1.1-sweep", REFUTED if lens_free == 0 else SURVIVES,
            f"{lens_free} of {total} completions are free of lenses and loops",
            lambda: sum(1 for _ in _completions(g0, settings, True)) == 0)
    else:
        rec(f"{root}/sweep", "T1.1-sweep", SURVIVES, f"lens rule disabled: {lens_free} completions stand")
    return results, left


def _glue_case(case: str, v1: str, base: Configuration, bds, cands: list[Candidate], settings: Settings,
               trace: list[TraceRecord], configs: dict[str, Configuration]):
    path = f"{base.branch.rsplit('/', 1)[0]}/case-{case}"
    start = len(trace)
    g0 = base.chart
    targets = sorted(d for d, b in bds.items() if b.vertex == v1 and b.direction == IN)
    c_edges = ("e4'.w4", "e4''.w4")
    focus = ("e4'", "e4''", "e2'", "e2''", "e3'")
    order = ("L6.3-io", LENS_RULE) if case == "i" else (LENS_RULE, "L6.3-io")
    outcomes, left = [], []
    for k, perm in enumerate(itertools.permutations(targets, 2)):
        pairs = tuple(zip(c_edges, perm))
        bpath = f"{path}/b{k}"
        probe = dataclasses.replace(base, branch=bpath, pending=pairs)
        v = apply_rule(RULES["planarity"], probe, settings)
        trace.append(TraceRecord(bpath, "planarity", v.outcome, _located(v)))
        if v.refuted:
            configs[bpath] = probe
            outcomes.append(v)
            continue
        # edges of C and C' shared by every candidate completion of this branch
        group = [c for c in cands if c.v1 == v1 and set(pairs) <= set(c.pairs) and c.claim2]
        forced = set(pairs)
        if group:
            common = set.intersection(*(set(c.pairs) for c in group))
            forced |= {p for p in common if _stub_name(p[0]) in {"e2'", "e2''", "e3'"}}
        forced = tuple(sorted(forced))
        trace.append(TraceRecord(bpath, "T1.1-claim2", CONSTRAINED,
                                 "draw " + ", ".join(f"{_stub_name(a)}->{b}" for a, b in forced)
                                 + f" ({len(group)} candidate completions)"))
        part = _draw(g0, forced)
        hosts: list[str | None] = [None]
        if part.placements:
            # the oval is not joined yet: it may sit in any piece of A
            closed = {part.face_key("e1'''.w1"), part.face_key("e3''.w3")}
            hosts = sorted(
                k for k, w in part.face_walks.items()
                if k not in closed and w and not any(part.darts[x].vertex in GLUE_OVAL for x in w)
            )
        sub_outcomes = []
        for j, h in enumerate(hosts):
            hpath = bpath if h is None else f"{bpath}/h{j}"
            chart = part if h is None else _draw(g0, forced, host=h)
            cfg = Configuration("fig12g", hpath, chart, base.component, base.facts + (f"v1 = {v1}",), focus)
            configs[hpath] = cfg
            verdict = _run_plan(cfg, order, settings, hpath, trace)
            if verdict is None:
                trace.append(TraceRecord(hpath, "-", SURVIVES, "no rule refutes this branch"))
                left.append(cfg)
                sub_outcomes.append(RuleVerdict(SURVIVES, "-", hpath))
            else:
                sub_outcomes.append(verdict)
        outcomes.extend(sub_outcomes)
    refuted = bool(outcomes) and all(o.refuted for o in outcomes)
    deciding = [o for o in outcomes if o.refuted and o.rule != "planarity"]
    if refuted:
        lead = deciding[0] if deciding else outcomes[0]
        v = RuleVerdict(REFUTED, lead.rule, f"case ({case}) v1 = {v1}", lead.witness)
    elif not outcomes:
        v = RuleVerdict(REFUTED, "T1.1-cases", f"case ({case})", "no branch (vacuous)")
    else:
        v = RuleVerdict(SURVIVES, "-", f"case ({case}) v1 = {v1}", f"{len(left)} branch(es) survive")
    check = _summary_check(tuple(trace[start:]), configs, settings) if v.refuted else None
    trace.append(TraceRecord(path, v.rule, v.outcome, f"{v.location}: {v.witness}", check))
    return v, left


__all__ = [
    "AXIOM",
    "CONSTRAINED",
    "CASES",
    "Configuration",
    "DERIVED",
    "Elimination",
    "NOOP",
    "PLANS",
    "REFUTED",
    "RULES",
    "Rule",
    "RuleVerdict",
    "SCRIPTED",
    "SURVIVES",
    "SWEEP",
    "Settings",
    "THEOREM",
    "TheoremReport",
    "TraceRecord",
    "TypeReport",
    "apply_rule",
    "check_type_refinement",
    "configurations",
    "eliminate_fig12",
    "gluing_notation",
    "oval_chart",
    "overflow",
    "partitions",
    "relabel",
    "replay",
    "run_pipeline",
    "terminal_flips",
    "with_oval",
]
