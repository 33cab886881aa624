import subprocess
import sys
from pathlib import Path

from surfchart.references import FIVE, REFINED, SMALL, golden, golden_names, golden_text

ROOT = Path(__file__).resolve().parents[1]


def test_names():
    assert sorted(golden_names()) == sorted(SMALL + FIVE + REFINED)


def test_refinements_point_at_graphs():
    for name in REFINED:
        meta = golden(name).meta
        assert meta["refines"] in FIVE and meta["class"] == meta["refines"]


def test_generator_reproduces_files(tmp_path):
    # the generator embeds each graph with networkx, independently of the enumerator
    subprocess.run([sys.executable, str(ROOT / "tools" / "make_goldens.py"), str(tmp_path)], check=True)
    for name in golden_names():
        assert (tmp_path / f"{name}.chart").read_text() == golden_text(name)
