"""Reference graphs shipped as chart files."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from surfchart.chart import Chart
from surfchart.docio import parse

SMALL = ("fig5a", "fig5b", "fig5c")
FIVE = tuple(f"fig12{c}" for c in "abcdefghi")
REFINED = tuple(f"fig13{c}" for c in "abcdefg")


def golden_names() -> list[str]:
    root = resources.files("surfchart") / "data" / "golden"
    return sorted(p.name[: -len(".chart")] for p in root.iterdir() if p.name.endswith(".chart"))


def golden_text(name: str) -> str:
    return (resources.files("surfchart") / "data" / "golden" / f"{name}.chart").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def golden(name: str) -> Chart:
    return parse(golden_text(name))


def component_of(chart: Chart, label: int = 1):
    """The single label component of a reference chart as an AbstractComponent."""
    from surfchart.subgraph import components, extract, to_abstract

    sub = extract(chart, label)
    comps = [c for c in components(sub, chart) if c.whites]
    if len(comps) != 1:
        raise ValueError(f"{chart.name}: expected one component, found {len(comps)}")
    return to_abstract(chart, sub, comps[0])


@lru_cache(maxsize=None)
def reference_codes() -> dict[str, str]:
    """Class name -> unoriented canonical code for the twelve small graphs."""
    from surfchart.components import canonical_code

    out = {}
    for name in SMALL + FIVE:
        chart = golden(name)
        out[chart.meta["class"]] = canonical_code(component_of(chart), oriented=False)
    return out
