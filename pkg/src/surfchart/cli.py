"""Command line: ``surfchart <command> ...``.

Exit codes: 0 success, 1 violations or a failed verification, 2 usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from surfchart.chart import AXIOMS, MINIMAL, ChartError, Domain, validate
from surfchart.components import Flags, enumerate_components, short_code, verify_classification
from surfchart.docio import emit_diagram, read_chart
from surfchart.regions import (
    boundary_orientation,
    detect_lenses,
    find_angled_disks,
    io_balance,
    io_witness,
    min_white_lower_bound,
)
from surfchart.subgraph import classify_component, closed_curves, components, edge_roles, extract, gamma_type

OK, FAIL, USAGE = 0, 1, 2
LEMMAS = ("lemma-5.1b", "lemma-7.1", "lemma-7.2", "prop-14.2", "theorem-1.1")


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        return read_chart(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except ChartError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _labels(chart, label: int | None) -> list[int]:
    if label is not None:
        if not 1 <= label < chart.degree:
            raise UsageError(f"label {label} out of range 1..{chart.degree - 1}")
        return [label]
    return list(range(1, chart.degree))


def cmd_validate(args, out) -> int:
    chart = _load(args.file)
    found = validate(chart, MINIMAL if args.minimal else AXIOMS)
    for v in found:
        print(v, file=out)
    print(f"{len(found)} violation(s)", file=out)
    return FAIL if found else OK


def cmd_features(args, out) -> int:
    chart = _load(args.file)
    for m in _labels(chart, args.label):
        sub = extract(chart, m)
        print(f"label {m}: type {gamma_type(chart, m)}", file=out)
        for i, comp in enumerate(components(sub, chart), 1):
            w, b, c = comp.counts
            name = classify_component(chart, sub, comp)[0] if comp.whites else "-"
            print(f"  component {i}: w={w} b={b} c={c} class {name} arcs {','.join(comp.arcs)}", file=out)
        for aid, role in sorted(edge_roles(sub, chart).items()):
            print(f"  arc {aid}: {role}", file=out)
        for f in closed_curves(sub, chart):
            print(f"  {f.kind}: {','.join(f.carrier)}", file=out)
    return OK


def cmd_disks(args, out) -> int:
    chart = _load(args.file)
    for m in _labels(chart, args.label):
        for d in find_angled_disks(chart, m):
            kind = "special" if d.special else "plain"
            print(
                f"label {m}: {d.k}-angled {kind} whites {','.join(d.whites)} boundary {','.join(d.boundary)} "
                f"feelers {','.join(d.feelers) or '-'} {boundary_orientation(chart, d)} "
                f"faces {','.join(sorted(d.region.walks))}",
                file=out,
            )
    return OK


def cmd_lenses(args, out) -> int:
    chart = _load(args.file)
    found = [lens for m in range(1, chart.degree - 1) for lens in detect_lenses(chart, m)]
    for lens in found:
        print(f"lens ({lens.label},{lens.label + 1}): {lens.upper} ∪ {lens.lower} at {','.join(lens.whites)} "
              f"condition {lens.condition}", file=out)
    print(f"{len(found)} lens(es)", file=out)
    return OK


def cmd_io(args, out) -> int:
    chart = _load(args.file)
    (k,) = _labels(chart, args.label)
    near = [e.id for e in chart.edges.values() if abs(e.label - k) <= 1]
    doms = chart.domains(near)
    picked = []
    for face in args.region.split(","):
        try:
            picked.append(doms[chart.domain_of_walk(doms, face)])
        except ChartError as exc:
            raise UsageError(str(exc)) from exc
    region = Domain(frozenset().union(*(d.walks for d in picked)), frozenset().union(*(d.vertices for d in picked)))
    fixed = {}
    for item in args.fix or ():
        dart, _, direction = item.partition("=")
        if direction not in ("in", "out"):
            raise UsageError(f"--fix wants dart=in|out, got {item!r}")
        fixed[dart] = direction
    sheet = io_balance(chart, region, k, fixed)
    print(io_witness(sheet), file=out)
    print(f"balanced: {sheet.balanced}; can balance: {sheet.can_balance}", file=out)
    if not fixed:
        print(f"white lower bound: {min_white_lower_bound(chart, region, k)}", file=out)
    return OK


def cmd_enumerate(args, out) -> int:
    if not 1 <= args.whites <= 7:
        raise UsageError("--whites must be between 1 and 7")
    from surfchart.references import reference_codes

    names = {c: n for n, c in reference_codes().items()}
    flags = Flags(no_loop=args.no_loop, orient=args.orient, minimal_local_rules=args.orient)
    codes = enumerate_components(args.whites, flags)
    for code, comp in codes.items():
        print(f"{short_code(code)} b={comp.blacks} {names.get(code, '-')}", file=out)
    print(f"{len(codes)} code(s)", file=out)
    return OK


def cmd_verify(args, out) -> int:
    from surfchart import engine

    disabled = tuple(args.disable or ())
    if args.lemma in ("lemma-5.1b", "lemma-7.1", "lemma-7.2"):
        report = verify_classification(args.lemma)
        print("\n".join(report.lines()), file=out)
        return OK if report.match else FAIL
    if args.lemma == "prop-14.2":
        ok = True
        for graph in engine.FIVE:
            el = engine.eliminate_fig12(graph, disabled=disabled)
            bad = engine.replay(el.trace, el.configs, el.settings)
            lines = el.trace if args.trace else el.trace[-1:]
            for rec in lines:
                print(rec, file=out)
            expected = engine.SURVIVES if graph == "fig12g" else engine.REFUTED
            ok &= el.verdict.outcome == expected and el.agrees and not bad
        print("only fig12g survives" if ok else "elimination failed", file=out)
        return OK if ok else FAIL
    report = engine.run_pipeline(disabled=disabled)
    bad = engine.replay(report.trace, report.configs, report.settings)
    lines = report.trace if args.trace else [r for r in report.trace if r.rule != "-" and "/" not in r.branch
                                             or r.branch.endswith(("case-i", "case-ii", "case-iii", "sweep"))]
    for rec in lines:
        print(rec, file=out)
    for rec in bad:
        print(f"replay failed: {rec}", file=out)
    print(report.verdict, file=out)
    return OK if report.refuted and not bad else FAIL


def cmd_render(args, out) -> int:
    chart = _load(args.file)
    text = emit_diagram(chart, args.format, collapse_bw=args.collapse_bw)
    if args.output in (None, "-"):
        out.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfchart", description="Charts, label subgraphs and the type (m;7) case engine.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check chart conditions")
    s.add_argument("file")
    s.add_argument("--minimal", action="store_true", help="also check the minimality assumptions")
    s.set_defaults(func=cmd_validate)

    for name, func, helptext in (("features", cmd_features, "label subgraph structure"),
                                 ("disks", cmd_disks, "k-angled disks")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("--label", type=int)
        s.set_defaults(func=func)

    s = sub.add_parser("lenses", help="lenses between drawn edges")
    s.add_argument("file")
    s.set_defaults(func=cmd_lenses)

    s = sub.add_parser("io", help="IO count of a region")
    s.add_argument("file")
    s.add_argument("--region", required=True, help="comma-separated face ids (any dart of the walk)")
    s.add_argument("--label", type=int, required=True)
    s.add_argument("--fix", action="append", metavar="DART=in|out")
    s.set_defaults(func=cmd_io)

    s = sub.add_parser("enumerate", help="enumerate label components")
    s.add_argument("--whites", type=int, required=True)
    s.add_argument("--no-loop", action="store_true")
    s.add_argument("--orient", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", help="re-run a classification or the elimination pipeline")
    s.add_argument("lemma", choices=LEMMAS)
    s.add_argument("--trace", action="store_true", help="print every trace record")
    s.add_argument("--disable", action="append", metavar="RULE", help="switch off a rule (repeatable)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", help="emit a diagram")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--format", choices=("dot", "svg"), default="dot")
    s.add_argument("--collapse-bw", action="store_true")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def entry() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(main())


if __name__ == "__main__":
    entry()
