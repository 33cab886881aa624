"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import subprocess
import sys
import time

from conftest import annulus_fixture, complete_charts

from surfchart import engine
from surfchart.chart import ChartError, validate
from surfchart.components import Flags, canonical_code, enumerate_components, orientations_raw, verify_classification
from surfchart.docio import parse, serialize
from surfchart.references import FIVE, SMALL, component_of, golden, golden_names, golden_text, reference_codes
from surfchart.regions import io_balance, min_white_lower_bound
from test_validate import mutants

# pinned limits
SMALL_SECONDS = 1.0
FIVE_SECONDS = 60.0
ELIMINATION_SECONDS = 60.0
BLACKS = (3, 3, 3, 1, 1, 1, 3, 3, 1)
RULES = Flags(no_loop=True, orient=True, minimal_local_rules=True)


def report(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_criterion_1_small_classification():
    t = time.perf_counter()
    two, three = enumerate_components(2, RULES), enumerate_components(3, RULES)
    took = time.perf_counter() - t
    want = {reference_codes()[golden(n).meta["class"]] for n in SMALL}
    ok = len(two) == 2 and len(three) == 1 and set(two) | set(three) == want and took < SMALL_SECONDS
    report(1, ok, f"w=2: {len(two)} codes, w=3: {len(three)} code, goldens match, {took:.2f}s < {SMALL_SECONDS}s")


def test_criterion_2_five_white_classification():
    t = time.perf_counter()
    five = enumerate_components(5, RULES)
    took = time.perf_counter() - t
    codes = reference_codes()
    want = [codes[golden(n).meta["class"]] for n in FIVE]
    blacks = tuple(five[c].blacks if c in five else -1 for c in want)
    ok = set(five) == set(want) and blacks == BLACKS and took < FIVE_SECONDS
    report(2, ok, f"{len(five)} codes, blacks {blacks}, {took:.2f}s < {FIVE_SECONDS}s")


def test_criterion_3_orientation_refinement():
    rep = verify_classification("7.2")
    base = component_of(golden("fig12g")).with_direction(None)
    raw = orientations_raw(base)
    collapsed = {canonical_code(o, oriented=True, ro=True) for o in raw}
    ok = rep.match and len(raw) > 1 and len(collapsed) == 1
    report(3, ok, f"{len(rep.found)} refined graphs match; fig12g: {len(raw)} raw orientations, {len(collapsed)} RO class")


def test_criterion_4_elimination():
    t = time.perf_counter()
    survivors, replay_failures, agree = [], 0, True
    for g in FIVE:
        el = engine.eliminate_fig12(g)
        if not el.verdict.refuted:
            survivors.append(g)
        replay_failures += len(engine.replay(el.trace, el.configs, el.settings))
        agree &= el.agrees
    took = time.perf_counter() - t
    ok = survivors == ["fig12g"] and not replay_failures and agree and took < ELIMINATION_SECONDS
    report(4, ok, f"survivors {survivors}, {replay_failures} replay failures, {took:.1f}s < {ELIMINATION_SECONDS}s")


def test_criterion_5_main_theorem():
    proc = subprocess.run([sys.executable, "-m", "surfchart.cli", "verify", "theorem-1.1"],
                          capture_output=True, text=True, encoding="utf-8")
    out = proc.stdout
    ok = (
        proc.returncode == 0
        and "case (ii) v1 = w5: e4' ∪ e5 bounds a lens" in out
        and "case (iii) v1 = w6: e2' ∪ e1 bounds a lens" in out
        and "case-i | L6.3-io | refuted" in out
        and out.rstrip().endswith(engine.THEOREM)
    )
    report(5, ok, f"exit {proc.returncode}, three cases refuted, verdict '{out.rstrip().splitlines()[-1]}'")


def test_criterion_6_io_calculation():
    chart, region = annulus_fixture()
    sheet = io_balance(chart, region, 2)
    bound = min_white_lower_bound(chart, region, 2)
    charts = complete_charts()
    checked = unbalanced = 0
    for c in charts:
        for k in range(1, c.degree):
            near = sorted(e.id for e in c.edges.values() if abs(e.label - k) <= 1)
            # every subset of nearby edges is too many; take prefixes and the full set
            for cut in range(len(near) + 1):
                for d in c.domains(near[:cut]):
                    checked += 1
                    unbalanced += not io_balance(c, d, k).balanced
    ok = (sheet.inward, sheet.outward) == (5, 2) and bound >= 1 and charts and not unbalanced
    report(6, ok, f"annulus {sheet.inward} in vs {sheet.outward} out, lower bound {bound}; "
                  f"{checked} regions on {len(charts)} complete charts, {unbalanced} unbalanced")


def test_criterion_7_validator():
    clean = sum(bool(validate(golden(n))) for n in golden_names())
    silent = total = 0
    for n in golden_names():
        for _, _, text in mutants(golden_text(n)):
            total += 1
            silent += not validate(parse(text))
    euler = 0
    for n in golden_names():
        try:
            golden(n).check_euler()
        except ChartError:
            euler += 1
    ok = clean == 0 and silent == 0 and total > 0 and euler == 0
    report(7, ok, f"{clean} dirty goldens, {silent}/{total} mutants undetected, {euler} Euler failures")


def test_criterion_8_determinism():
    trips = sum(serialize(parse(golden_text(n))) != golden_text(n) for n in golden_names())
    runs = [subprocess.run([sys.executable, "-m", "surfchart.cli", "verify", "theorem-1.1", "--trace"],
                           capture_output=True).stdout for _ in range(2)]
    ok = trips == 0 and runs[0] == runs[1] and len(runs[0]) > 0
    report(8, ok, f"{trips} round-trip mismatches, traces identical: {runs[0] == runs[1]} ({len(runs[0])} bytes)")
