"""Charts on the 2-sphere, their label subgraphs, and a replayable case engine."""

from surfchart.chart import AXIOMS, MINIMAL, Chart, ChartError, Domain, assemble, ro_transform, validate
from surfchart.components import Flags, canonical_code, enumerate_components, orientations, verify_classification
from surfchart.docio import canonicalize, emit_diagram, parse, read_chart, serialize, write_chart
from surfchart.engine import check_type_refinement, eliminate_fig12, replay, run_pipeline
from surfchart.regions import detect_lenses, find_angled_disks, io_balance, min_white_lower_bound, region_completions
from surfchart.subgraph import classify_component, components, extract, gamma_type

__all__ = [
    "AXIOMS", "MINIMAL", "Chart", "ChartError", "Domain", "assemble", "ro_transform", "validate",
    "Flags", "canonical_code", "enumerate_components", "orientations", "verify_classification",
    "canonicalize", "emit_diagram", "parse", "read_chart", "serialize", "write_chart",
    "check_type_refinement", "eliminate_fig12", "replay", "run_pipeline",
    "detect_lenses", "find_angled_disks", "io_balance", "min_white_lower_bound", "region_completions",
    "classify_component", "components", "extract", "gamma_type",
]
