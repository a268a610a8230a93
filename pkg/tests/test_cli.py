import json
import os
import shutil

import pytest

from fibrelab import fixtures
from fibrelab.cli import cat_diagram_to_json, main, set_diagram_to_json

FIXDIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "fixtures")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_category(tmp_path, name):
    raw = fixtures.all_categories()[name].to_dict()
    p = tmp_path / ("%s.json" % name.lower())
    p.write_text(json.dumps(raw))
    return str(p)


def write_diagram(tmp_path, name):
    raw = cat_diagram_to_json(fixtures.all_cat_diagrams()[name])
    p = tmp_path / ("%s.json" % name)
    p.write_text(json.dumps(raw))
    return str(p)


def test_validate_pass(tmp_path, capsys):
    code, out = run(capsys, "validate", write_category(tmp_path, "S3"))
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "pass"
    assert rep["format"] == "fibrelab/1"
    assert rep["stats"]["morphisms"] == 6


def test_validate_broken_table(tmp_path, capsys):
    raw = fixtures.all_categories()["Z2"].to_dict()
    raw["composition"] = [["s", "s", "ghost"]]  # composite token undeclared
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(raw))
    code, out = run(capsys, "validate", str(p))
    assert code == 2
    assert json.loads(out)["status"] == "invalid_input"


def test_missing_file_exit_code(capsys):
    code, out = run(capsys, "validate", "/nonexistent/cat.json")
    assert code == 2


def test_opposite_writes_category(tmp_path, capsys):
    out_path = tmp_path / "op.json"
    code, _ = run(
        capsys,
        "--output",
        str(out_path),
        "opposite",
        write_category(tmp_path, "SPAN"),
    )
    assert code == 0
    raw = json.loads(out_path.read_text())
    assert sorted(raw["objects"]) == ["l", "r", "s"]
    # le: s -> l became l -> s
    m = {d["id"]: d for d in raw["morphisms"]}
    assert m["le"]["dom"] == "l" and m["le"]["cod"] == "s"


def test_colimit_cat_resource_exit(tmp_path, capsys):
    code, out = run(
        capsys,
        "--no-timing",
        "colimit-cat",
        "--phi",
        write_diagram(tmp_path, "loop-coeq"),
        "--bound",
        "100",
    )
    assert code == 3
    rep = json.loads(out)
    assert rep["status"] == "resource_exceeded"
    assert rep["witness"]["trace"]


def test_colimit_cat_pass(tmp_path, capsys):
    code, out = run(
        capsys, "colimit-cat", "--phi", write_diagram(tmp_path, "span-push3")
    )
    assert code == 0
    rep = json.loads(out)
    assert len(rep["witness"]["colimit"]["objects"]) == 3


def test_reports_are_deterministic(tmp_path, capsys):
    phi = write_diagram(tmp_path, "span-push3")
    _, out1 = run(capsys, "--no-timing", "colimit-cat", "--phi", phi)
    _, out2 = run(capsys, "--no-timing", "colimit-cat", "--phi", phi)
    assert out1 == out2


def test_corpus_on_shipped_fixtures(capsys):
    assert os.path.isdir(FIXDIR)
    code, out = run(capsys, "--no-timing", "corpus", FIXDIR, "--cases", "1")
    assert code == 0
    summary = json.loads(out)
    assert summary["status"] == "pass"
    assert summary["counts"]["fail"] == 0
    assert "span-push3" in summary["matrix"]["check-cdf"]


def test_corpus_empty_directory(tmp_path, capsys):
    d = tmp_path / "empty"
    d.mkdir()
    code, out = run(capsys, "--no-timing", "corpus", str(d))
    assert code == 0
    summary = json.loads(out)
    assert summary["counts"]["total"] == 0
    assert summary["matrix"] == {}


def test_corpus_flags_mutated_fixture(tmp_path, capsys):
    d = tmp_path / "mutated"
    d.mkdir()
    raw = json.loads(
        open(os.path.join(FIXDIR, "span-push3.json")).read()
    )
    # corrupt one transition so the diagram no longer validates
    u = next(iter(raw["transitions"]))
    k = next(iter(raw["transitions"][u]["on_objects"]))
    objs = raw["fibres"][raw["base"]["morphisms"][0]["cod"]]["objects"]
    raw["transitions"][u]["on_objects"][k] = "no-such-object"
    (d / "span-push3.json").write_text(json.dumps(raw))
    code, out = run(capsys, "--no-timing", "corpus", str(d))
    assert code == 1
    summary = json.loads(out)
    assert summary["status"] == "fail"
    statuses = [s for row in summary["matrix"].values() for s in row.values()]
    assert "invalid_input" in statuses or "fail" in statuses
    assert any(
        "span-push3" in row for row in summary["matrix"].values()
    )


def test_check_cdf_via_cli(tmp_path, capsys):
    from fibrelab.catcolim import colimit_cat
    import random

    from fibrelab.randgen import random_set_diagram

    phi_path = write_diagram(tmp_path, "span-push3")
    phi = fixtures.all_cat_diagrams()["span-push3"]
    res = colimit_cat(phi)
    x = random_set_diagram(random.Random(0), res.colimit)
    x_path = tmp_path / "x.json"
    x_path.write_text(json.dumps(set_diagram_to_json(x)))
    code, out = run(
        capsys, "--no-timing", "check-cdf", "--phi", phi_path, "--x", str(x_path)
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "pass"
    assert rep["stats"]["lhs"] == rep["stats"]["rhs"]


def test_explain_renders_pass_and_resource(tmp_path, capsys):
    phi = write_diagram(tmp_path, "loop-coeq")
    out_path = tmp_path / "rep.json"
    run(
        capsys,
        "--output",
        str(out_path),
        "--no-timing",
        "colimit-cat",
        "--phi",
        phi,
        "--bound",
        "50",
    )
    code, out = run(capsys, "explain", str(out_path))
    assert code == 0
    assert "RESOURCE_EXCEEDED" in out
    assert "growth trace" in out


def test_explain_rejects_garbage(tmp_path, capsys):
    p = tmp_path / "junk.json"
    p.write_text("not json at all")
    code, _ = run(capsys, "explain", str(p))
    assert code == 2
