import io

import pytest
from conftest import TRIANGLE

from surfchart.cli import main
from surfchart.docio import parse, write_chart
from surfchart.engine import with_oval
from surfchart.references import golden


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def chart_file(tmp_path):
    def make(chart, name="c.chart"):
        path = tmp_path / name
        write_chart(chart, path)
        return str(path)

    return make


def test_validate_clean(chart_file):
    code, out = run("validate", chart_file(golden("fig12g")), "--minimal")
    assert code == 0 and out.strip() == "0 violation(s)"


def test_validate_reports_violations(chart_file):
    code, out = run("validate", chart_file(parse(TRIANGLE)), "--minimal")
    assert code == 1
    assert "A2 at t1" in out and out.strip().endswith("3 violation(s)")


def test_missing_file_is_usage_error(tmp_path):
    code, _ = run("validate", str(tmp_path / "none.chart"))
    assert code == 2


def test_malformed_file_is_usage_error(tmp_path):
    path = tmp_path / "bad.chart"
    path.write_text("not a chart\n")
    assert run("validate", str(path))[0] == 2


def test_bad_arguments():
    assert run("enumerate")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("enumerate", "--whites", "9")[0] == 2


def test_features(chart_file):
    code, out = run("features", chart_file(golden("fig12g")), "--label", "1")
    assert code == 0
    assert "label 1: type (5,)" in out
    assert "component 1: w=5 b=3 c=0 class fig12g" in out


def test_label_out_of_range(chart_file):
    assert run("features", chart_file(golden("fig12g")), "--label", "7")[0] == 2


def test_disks(chart_file):
    code, out = run("disks", chart_file(golden("fig12a")), "--label", "1")
    assert code == 0 and len(out.splitlines()) == 6


def test_lenses(chart_file):
    code, out = run("lenses", chart_file(golden("fig12g")))
    assert code == 0 and out.strip() == "0 lens(es)"


def test_io_annulus(chart_file):
    path = chart_file(with_oval(parse(TRIANGLE), "a12.w1"))
    code, out = run("io", path, "--region", "a12.w1", "--label", "2")
    assert code == 0
    assert out.splitlines()[0].startswith("label 2: 5 inward vs 2 outward")
    assert "white lower bound: 1" in out


def test_io_fix(chart_file):
    path = chart_file(with_oval(parse(TRIANGLE), "a12.w1"))
    code, out = run("io", path, "--region", "a12.w1", "--label", "2", "--fix", "w1.s1=out")
    assert code == 0 and "4 inward vs 3 outward" in out
    assert run("io", path, "--region", "a12.w1", "--label", "2", "--fix", "w1.s1=up")[0] == 2


def test_io_unknown_face(chart_file):
    assert run("io", chart_file(golden("fig12g")), "--region", "nope", "--label", "2")[0] == 2


def test_enumerate():
    code, out = run("enumerate", "--whites", "3", "--no-loop", "--orient")
    assert code == 0
    assert out.strip().endswith("1 code(s)") and "skew-theta" in out


@pytest.mark.parametrize("lemma", ["lemma-5.1b", "lemma-7.1", "lemma-7.2"])
def test_verify_lemmas(lemma):
    code, out = run("verify", lemma)
    assert code == 0 and "match" in out.splitlines()[0]


def test_verify_elimination():
    code, out = run("verify", "prop-14.2")
    assert code == 0
    assert out.strip().endswith("only fig12g survives")


def test_verify_theorem():
    code, out = run("verify", "theorem-1.1")
    assert code == 0
    assert out.strip().splitlines()[-1] == "refuted: no minimal chart of type (m;7)"


def test_verify_theorem_without_lens_rule_fails():
    code, out = run("verify", "theorem-1.1", "--disable", "L10.1-axiom")
    assert code == 1
    assert "pipeline failure" in out


def test_render(chart_file, tmp_path):
    dest = tmp_path / "g.svg"
    code, _ = run("render", chart_file(golden("fig5c")), "-o", str(dest), "--format", "svg", "--collapse-bw")
    assert code == 0 and dest.read_text().lstrip().startswith("<svg")
    code, out = run("render", chart_file(golden("fig5c")), "--format", "dot")
    assert code == 0 and out.startswith("digraph")
