import json
import shutil
import subprocess
from pathlib import Path

import pytest

from reedycheck.chain import ChainComplexes, classify, is_complex
from reedycheck.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, FIXTURE_KINDS, generate_fixture, main
from reedycheck.diagram import DiagramCategory, check_functorial
from reedycheck.fincat import builtin
from reedycheck.finset import FinSets
from reedycheck.serialize import (
    chain_map_from_json, complex_from_json, diagram_from_json, nat_from_json,
)

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scripts" / "scenarios"
GOLDEN = Path(__file__).parent / "golden"


def _scenario(tmp_path, **kw):
    doc = {"schema": "reedycheck.scenario/1", "base": "chain", "index": "arrow", "suites": ["thm1"],
           "samples": 4, "seed": 3}
    doc.update(kw)
    path = tmp_path / "sc.json"
    path.write_text(json.dumps(doc))
    return path


def test_run_writes_a_passing_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["run", "--scenario", str(_scenario(tmp_path)), "--out", str(out)]) == EXIT_OK
    rep = json.loads(out.read_text())
    s = rep["suites"]["thm1"]
    assert rep["ok"] and s["cases"] == 4 and s["passes"] == 4 and s["failures"] == []
    assert s["passes"] + len(s["failures"]) == s["cases"]
    assert "thm1" in capsys.readouterr().err


def test_reports_are_byte_identical(tmp_path):
    sc = _scenario(tmp_path, suites=["prop1", "oracles", "adj_l3"])
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["run", "--scenario", str(sc), "--out", str(a)])
    main(["run", "--scenario", str(sc), "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_seed_flag_overrides_and_changes_witnesses(tmp_path):
    sc = _scenario(tmp_path, suites=["negative_controls"], samples=3)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["run", "--scenario", str(sc), "--seed", "1", "--out", str(a)])
    main(["run", "--scenario", str(sc), "--seed", "2", "--out", str(b)])
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ra["scenario"]["seed"] == 1 and rb["scenario"]["seed"] == 2
    assert ra != rb


def test_timings_are_opt_in(tmp_path):
    out = tmp_path / "r.json"
    main(["run", "--scenario", str(_scenario(tmp_path)), "--out", str(out), "--timings"])
    assert "seconds" in json.loads(out.read_text())["suites"]["thm1"]
    main(["run", "--scenario", str(_scenario(tmp_path)), "--out", str(out)])
    assert "seconds" not in json.loads(out.read_text())["suites"]["thm1"]


def test_negative_controls_exit_zero_when_all_detected(tmp_path):
    out = tmp_path / "r.json"
    sc = _scenario(tmp_path, suites=["negative_controls"], samples=6)
    assert main(["run", "--scenario", str(sc), "--out", str(out)]) == EXIT_OK
    s = json.loads(out.read_text())["suites"]["negative_controls"]
    assert s["injected"] == s["detected"] == len(s["failures"]) == 6
    assert all(f["witness"] for f in s["failures"])


def test_replay_reproduces_failures(tmp_path, capsys):
    out = tmp_path / "r.json"
    main(["run", "--scenario", str(_scenario(tmp_path, suites=["negative_controls"], samples=3)), "--out", str(out)])
    assert main(["replay", str(out)]) == EXIT_OK
    assert "3/3 failures reproduced" in capsys.readouterr().out


def test_failing_report_exits_one(tmp_path, monkeypatch):
    from reedycheck import suites
    from reedycheck.suites import Outcome, Suite

    broken = Suite("thm1", suites._sampled, lambda env, desc, rng: Outcome(False, ["forced"]), needs_model=True)
    monkeypatch.setitem(suites.SUITES, "thm1", broken)
    assert main(["run", "--scenario", str(_scenario(tmp_path)), "--out", str(tmp_path / "r.json")]) == EXIT_FAIL


@pytest.mark.parametrize("doc, field", [
    ({"index": "nonesuch", "suites": ["eq1"]}, "index"),
    ({"index": "arrow", "suites": ["bogus"]}, "suites[0]"),
    ({"index": "arrow", "suites": []}, "suites"),
    ({"base": "finset", "index": "arrow", "suites": ["thm1"]}, "suites[0]"),
    ({"base": {"kind": "chain", "p": 4}, "index": "arrow", "suites": ["eq1"]}, "base.p"),
    ({"index": "arrow", "suites": ["eq1"], "samples": 0}, "samples"),
    ({"index": "arrow", "suites": ["eq1"], "caps": {"enumeration": 0}}, "caps.enumeration"),
    ({"index": {"objects": 1, "arrows": [[0, 0]], "identities": [0], "composition": [0]}, "suites": ["eq1"]},
     "index.degree"),
    ({"schema": "other/9", "index": "arrow", "suites": ["eq1"]}, "schema"),
])
def test_invalid_scenarios_name_the_field(tmp_path, capsys, doc, field):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert main(["run", "--scenario", str(path)]) == EXIT_USAGE
    assert f"invalid input: {field}" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["run"]) == EXIT_USAGE
    assert main(["run", "--scenario", str(tmp_path / "missing.json")]) == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["run", "--scenario", str(bad)]) == EXIT_USAGE


def test_cap_environment_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("REEDYCHECK_CAP", "junk")
    assert main(["run", "--scenario", str(_scenario(tmp_path))]) == EXIT_USAGE
    monkeypatch.setenv("REEDYCHECK_CAP", "3")
    assert main(["generate", "--kind", "chain_complex", "--max-dim", "2"]) == EXIT_USAGE
    assert "resource limit" in capsys.readouterr().err


def test_resource_failures_are_recorded_per_case(tmp_path, monkeypatch):
    monkeypatch.setenv("REEDYCHECK_CAP", "2")
    out = tmp_path / "r.json"
    sc = _scenario(tmp_path, base={"kind": "finset", "max_size": 3}, suites=["adj_l1"], samples=3)
    main(["run", "--scenario", str(sc), "--out", str(out)])
    rep = json.loads(out.read_text())
    kinds = {f["kind"] for f in rep["suites"]["adj_l1"]["failures"]}
    assert kinds <= {"resource"} and rep["suites"]["adj_l1"]["cases"] == 3


def test_list_builtins(capsys):
    assert main(["list-builtins"]) == EXIT_OK
    cat = {b["name"]: b for b in json.loads(capsys.readouterr().out)["builtins"]}
    assert cat["arrow"]["objects"] == 2 and cat["arrow"]["arrows"] == 3
    assert cat["span"]["kind"] == "inverse"
    assert cat["square"]["direct"] and cat["square"]["degrees"] == [0, 1, 1, 2]


def test_generate_matches_golden(capsys):
    assert main(["generate", "--kind", "chain_complex", "--max-degree", "2", "--max-dim", "2", "--seed", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == json.loads((GOLDEN / "chain_complex_seed1.json").read_text())
    assert is_complex(complex_from_json(out["value"]))


def test_generated_fixtures_are_valid():
    C = ChainComplexes(2)
    d = generate_fixture("diagram", {"base": "finset", "index": "arrow"}, 4)
    D = DiagramCategory(FinSets(), builtin("arrow").base)
    assert check_functorial(FinSets(), diagram_from_json(D, d["value"])).ok
    f = chain_map_from_json(generate_fixture("cofibration", {"base": "chain"}, 4)["value"])
    assert classify(f)["cofibration"]
    f = chain_map_from_json(generate_fixture("trivial_fibration", {"base": "chain"}, 4)["value"])
    assert classify(f)["trivial_fibration"]
    DC = DiagramCategory(C, builtin("span").base)
    from reedycheck.reedy import ChainModel, ReedyModel
    model = ReedyModel(ChainModel(C), builtin("span"))
    for kind in ("cofibration", "trivial_cofibration", "fibration", "trivial_fibration"):
        g = nat_from_json(DC, generate_fixture(kind, {"base": "chain", "index": "span"}, 9)["value"])
        flags = model.flags(g)
        assert flags[kind]


@pytest.mark.parametrize("kind", FIXTURE_KINDS)
def test_generate_is_deterministic(kind):
    params = {"base": "chain", "index": "arrow"} if kind != "chain_complex" else {"base": "chain"}
    assert generate_fixture(kind, params, 11) == generate_fixture(kind, params, 11)


@pytest.mark.parametrize("path", sorted(SCENARIOS.glob("*.json")), ids=lambda p: p.stem)
def test_bundled_scenarios_pass(path, tmp_path):
    assert main(["run", "--scenario", str(path), "--samples", "3", "--out", str(tmp_path / "r.json")]) == EXIT_OK


@pytest.mark.skipif(shutil.which("reedycheck") is None, reason="console script not installed")
def test_console_script(tmp_path):
    res = subprocess.run(["reedycheck", "list-builtins"], capture_output=True, text=True)
    assert res.returncode == 0 and "arrow" in res.stdout
