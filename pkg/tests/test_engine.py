import dataclasses
from functools import lru_cache

import pytest

from surfchart import engine
from surfchart.engine import (
    CONSTRAINED,
    LENS_RULE,
    NOOP,
    REFUTED,
    RULES,
    SURVIVES,
    THEOREM,
    Settings,
    TraceRecord,
    apply_rule,
    check_type_refinement,
    configurations,
    eliminate_fig12,
    gluing_notation,
    partitions,
    relabel,
    replay,
    run_pipeline,
)
from surfchart.references import FIVE
from surfchart.subgraph import gamma_type

BRANCHES = dict(zip(FIVE, (8, 8, 8, 6, 10, 6, 8, 8, 8)))
PLAN_RULES = {
    "fig12a": "L8.1", "fig12b": "L12.1+L13.1+L13.2+L6.3b", "fig12c": "L13.1+L6.3-io", "fig12d": "L8.1",
    "fig12e": "L10.2+L12.1+L6.3b", "fig12f": "L9.1", "fig12h": "L11.1+L6.3-io", "fig12i": "L10.2+L9.1",
}


@lru_cache(maxsize=None)
def elimination(graph):
    return eliminate_fig12(graph)


@lru_cache(maxsize=None)
def pipeline(disabled=()):
    return run_pipeline(disabled=disabled)


@pytest.mark.parametrize("graph", FIVE)
def test_branch_counts(graph):
    cfgs = configurations(graph)
    assert len(cfgs) == BRANCHES[graph]
    assert len({c.branch for c in cfgs}) == len(cfgs)
    assert all(c.branch.startswith(graph + "/o") for c in cfgs)


@pytest.mark.parametrize("graph", FIVE)
def test_elimination(graph):
    el = elimination(graph)
    assert el.agrees
    assert el.trace[-1].branch == graph
    if graph == "fig12g":
        assert el.verdict.outcome == SURVIVES
        assert [c.branch for c in el.survivors] == ["fig12g/o1/p111"]
    else:
        assert el.verdict.refuted and not el.survivors
        assert el.verdict.rule == PLAN_RULES[graph]
        assert el.trace[-1].rule == engine.LEMMA_OF[graph]


@pytest.mark.parametrize("graph", FIVE)
def test_elimination_replays(graph):
    el = elimination(graph)
    assert replay(el.trace, el.configs, el.settings) == []


def test_short_name_accepted():
    assert eliminate_fig12("a").verdict == elimination("fig12a").verdict


def test_unknown_graph():
    with pytest.raises(ValueError):
        eliminate_fig12("fig12z")


def test_tampered_witness_fails_replay():
    el = elimination("fig12a")
    i = next(i for i, r in enumerate(el.trace) if r.verdict == REFUTED and r.check is None)
    bad = dataclasses.replace(el.trace[i], witness="made up")
    assert replay([bad], el.configs, el.settings) == [str(bad)]


def test_unknown_branch_fails_replay():
    rec = TraceRecord("fig12a/o9/p999", "L8.1", REFUTED, "nothing")
    assert replay([rec], {}, Settings()) == [str(rec)]


def test_false_check_fails_replay():
    rec = TraceRecord("script", "T", REFUTED, "w", lambda: False)
    assert replay([rec], {}, Settings()) == [str(rec)]


def test_disabled_rule_is_noop():
    cfg = configurations("fig12a")[0]
    assert apply_rule(RULES["L8.1"], cfg).refuted
    off = Settings(frozenset({"L8.1"}))
    assert apply_rule(RULES["L8.1"], cfg, off).outcome == NOOP


def test_axioms_never_fire():
    cfg = configurations("fig12g")[0]
    for rule in RULES.values():
        if rule.kind == engine.AXIOM:
            assert apply_rule(rule, cfg).outcome == NOOP


def test_every_rule_has_a_citation():
    assert all(r.citation for r in RULES.values())


def test_fig12g_survivor_resists_every_sweep_rule():
    (cfg,) = elimination("fig12g").survivors
    for rid in engine.SWEEP:
        assert not apply_rule(RULES[rid], cfg).refuted


def test_partitions():
    assert partitions(7) == [(7,), (5, 2), (4, 3), (3, 2, 2)]


@pytest.mark.parametrize("hyp, outcome, rule", [
    ((4, 3), REFUTED, "L5.4"),
    ((3, 2, 2), REFUTED, "L5.4"),
    ((7,), REFUTED, "L6.1"),
    ((6, 1), REFUTED, "L5.2"),
    ((5, 2), CONSTRAINED, "L6.3"),
])
def test_type_refinement(hyp, outcome, rule):
    rep = check_type_refinement(hyp)
    assert (rep.verdict.outcome, rep.verdict.rule) == (outcome, rule)
    assert replay(rep.trace, {}) == []


def test_white_count_witness():
    assert check_type_refinement((3, 4)).verdict.witness == "3 + 2 + 3 = 8 > 7"


def test_type_refinement_from_chart():
    chart = engine.with_oval(engine.golden("fig12g"), "e1.w1")
    assert gamma_type(chart, 1) == (5, 2)
    assert check_type_refinement(chart).verdict.outcome == CONSTRAINED


def test_five_two_facts():
    facts = check_type_refinement((5, 2)).facts
    assert len(facts) == 4 and facts[0].startswith("(a)")


def test_gluing_notation():
    (cfg,) = elimination("fig12g").survivors
    notation = gluing_notation(cfg.chart)
    assert notation is not None
    assert {"face:A", "face:D1", "face:D2"} <= set(notation)
    assert all(cfg.chart.face_key(notation[f"face:{k}"]) for k in ("A", "D1", "D2"))
    named = relabel(cfg.chart, notation)
    # the two feelerless disks sit at the named corners
    assert named.face_key("e1'''.w1") != named.face_key("e3''.w3")
    assert sorted(v for v in named.vertices if v.startswith("w")) == ["w1", "w2", "w3", "w4", "w5"]


def test_no_notation_off_the_survivor():
    assert gluing_notation(configurations("fig12a")[0].chart) is None


def test_theorem():
    rep = pipeline()
    assert rep.refuted and rep.verdict == THEOREM
    assert {k: v.outcome for k, v in rep.cases.items()} == {"i": REFUTED, "ii": REFUTED, "iii": REFUTED}
    assert rep.cases["i"].rule == "L6.3-io"
    assert rep.cases["ii"].witness.endswith("e4' ∪ e5 bounds a lens (condition (i))")
    assert rep.cases["iii"].witness.endswith("e2' ∪ e1 bounds a lens (condition (i))")
    assert replay(rep.trace, rep.configs, rep.settings) == []


def test_theorem_trace_is_deterministic():
    assert run_pipeline().text() == pipeline().text()


def test_single_graph_pipeline():
    rep = run_pipeline(graphs=["g"])
    assert rep.refuted and rep.verdict == THEOREM
    assert len(rep.trace) < len(pipeline().trace)


def test_lens_rule_is_load_bearing():
    rep = pipeline((LENS_RULE,))
    assert not rep.refuted
    assert {k: v.outcome for k, v in rep.cases.items()} == {"i": REFUTED, "ii": SURVIVES, "iii": SURVIVES}
    assert "type refinement" in rep.verdict


def test_loop_rule_can_be_disabled():
    # loops never arise in the surviving branch, so the verdict holds without the rule
    assert pipeline((engine.LOOP_RULE,)).refuted
