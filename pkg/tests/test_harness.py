import json
from pathlib import Path

import pytest

from ramapoly import cli, harness
from ramapoly.polyring import parse
from ramapoly.qpolys import QK_VARS


def test_registry_resolution():
    assert harness.resolve("lemma-6-1").name == "lemma-6-1"
    assert harness.resolve("eq-rec2").name == "lemma-6-1"
    assert harness.resolve("remark-6/operator").name == "remark-6"
    with pytest.raises(KeyError):
        harness.resolve("no-such-identity")


def test_run_identity_with_override():
    report = harness.run_identity("thm-2-2", {"max_n": 3})
    assert report.status == "pass"
    assert report.params == {"max_n": 3}
    assert all(r.status == "pass" for r in report.instances)
    with pytest.raises(KeyError):
        harness.run_identity("thm-2-2", {"bogus": 1})


def test_run_suite_subset_and_jobs():
    names = ["eq-general", "lemma-6-2"]
    serial = harness.run_suite(names, {"eq-general": {"max_n": 4},
                                       "lemma-6-2": {"max_n": 4}})
    parallel = harness.run_suite(names, {"eq-general": {"max_n": 4},
                                         "lemma-6-2": {"max_n": 4}}, jobs=2)
    assert [r.identity for r in serial] == names
    assert [(r.identity, r.status, len(r.instances)) for r in serial] == \
           [(r.identity, r.status, len(r.instances)) for r in parallel]
    assert harness.suite_status(serial) == 0


def test_suite_status_semantics():
    ok = harness.VerificationReport("x", {}, [
        harness.InstanceResult("x", {}, "pass", None, None, 0.0)])
    skipped = harness.VerificationReport("y", {}, [
        harness.InstanceResult("y", {}, "bound-exceeded", None, {"reason": "cap"}, 0.0)])
    failed = harness.VerificationReport("z", {}, [
        harness.InstanceResult("z", {}, "fail", {"lhs": "0", "rhs": "1"}, None, 0.0)])
    assert harness.suite_status([ok]) == 0
    assert harness.suite_status([ok, skipped]) == 1
    assert harness.suite_status([ok, skipped], allow_skip=True) == 0
    assert harness.suite_status([ok, failed], allow_skip=True) == 1
    assert skipped.status == "bound-exceeded" and failed.status == "fail"


def test_defaults_config_file_matches_registry():
    path = Path(__file__).resolve().parents[1] / "verify_defaults.cfg"
    parsed = cli.parse_config(str(path))
    assert set(parsed) == set(harness.REGISTRY)
    for name, params in parsed.items():
        assert params == harness.REGISTRY[name].defaults


def test_parse_config_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("thm-1-1.max_n\n")
    with pytest.raises(ValueError):
        cli.parse_config(str(bad))
    bad.write_text("max_n=3\n")
    with pytest.raises(ValueError):
        cli.parse_config(str(bad))
    bad.write_text("thm-1-1.max_n=three\n")
    with pytest.raises(ValueError):
        cli.parse_config(str(bad))


def test_cli_polynomials(capsys):
    assert cli.main(["qn", "--n", "2"]) == 0
    assert capsys.readouterr().out.strip() == "x + y + z + t"
    assert cli.main(["qnk", "--n", "3", "--k", "1", "--shifted"]) == 0
    assert capsys.readouterr().out.strip() == "3,1: 3*x + 2*t + 1"
    assert cli.main(["qn", "--n", "1"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_cli_table_reproduces_displayed_cells(capsys):
    assert cli.main(["table", "--which", "q1", "--max-n", "4"]) == 0
    lines = dict(line.split(": ", 1) for line in capsys.readouterr().out.splitlines())
    assert lines["3,1"] == parse("3x+4+5t", QK_VARS).render()
    assert lines["4,2"] == parse("15x+25+35t", QK_VARS).render()
    assert lines["4,sum"] == parse("(x+4+t)(x+4+2t)(x+4+3t)", QK_VARS).render()


def test_cli_enumerate(capsys):
    assert cli.main(["enumerate", "--n", "4", "--root", "1",
                     "--improper", "1", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "12"
    assert cli.main(["enumerate", "--n", "2", "--format", "json"]) == 0
    out = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert len(out) == 2 and all("label" in obj for obj in out)


def test_cli_enumerate_deterministic(capsys):
    cli.main(["enumerate", "--n", "4"])
    first = capsys.readouterr().out
    cli.main(["enumerate", "--n", "4"])
    assert capsys.readouterr().out == first


def test_cli_bound_exceeded_exit(capsys, monkeypatch):
    assert cli.main(["enumerate", "--n", "9", "--count-only"]) == 1
    assert "bound exceeded" in capsys.readouterr().err
    assert cli.main(["enumerate", "--n", "9", "--count-only",
                     "--max-labels", "4"]) == 1


def test_cli_stats_and_bijections(tmp_path, capsys):
    tree_obj = {"label": 1, "children": [{"label": 3, "children": []},
                                         {"label": 2, "children": []}]}
    path = tmp_path / "tree.json"
    path.write_text(json.dumps(tree_obj))
    assert cli.main(["stats", "--input", str(path)]) == 0
    st = json.loads(capsys.readouterr().out)
    assert st["eld"] == 1 and st["elder_vertices"] == [3]

    assert cli.main(["bijection", "--map", "theta", "--input", str(path)]) == 0
    forest = json.loads(capsys.readouterr().out)
    back = tmp_path / "forest.json"
    back.write_text(json.dumps(forest))
    assert cli.main(["bijection", "--map", "theta-inv", "--input", str(back)]) == 0
    assert json.loads(capsys.readouterr().out) == tree_obj

    perm = tmp_path / "perm.json"
    perm.write_text("[2, 4, 7, 1, 5, 8, 3, 6]")
    assert cli.main(["bijection", "--map", "psi", "--input", str(perm)]) == 0
    assert json.loads(capsys.readouterr().out) == [2, 4, 1, 7, 3, 5, 8, 6]

    assert cli.main(["bijection", "--map", "root-swap", "--input", str(path)]) == 0
    swapped = json.loads(capsys.readouterr().out)
    assert swapped["label"] == 2


def test_cli_stats_on_reference_fixture(capsys):
    from ramapoly import fixtures
    path = Path(fixtures.__file__).parent / "tree14.json"
    assert cli.main(["stats", "--input", str(path)]) == 0
    st = json.loads(capsys.readouterr().out)
    assert st["elder_vertices"] == [3, 8, 9, 11, 12, 13]
    assert len(st["improper_edges"]) == 6
    assert st["beta"]["14"] == 2


def test_cli_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["stats", "--input", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 1" in err
    missing = tmp_path / "missing.json"
    assert cli.main(["stats", "--input", str(missing)]) == 2


def test_cli_verify_unknown_identity_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--identity", "nonexistent"])
    assert exc.value.code == 2


def test_cli_verify_report_reproducible(tmp_path, capsys):
    report = tmp_path / "report.jsonl"
    argv = ["verify", "--identity", "eq-general,lemma-6-2", "--max-n", "4",
            "--report", str(report)]
    assert cli.main(argv) == 0
    out1 = capsys.readouterr().out
    assert "overall: pass" in out1
    first = [json.loads(line) for line in report.read_text().splitlines()]
    assert cli.main(argv) == 0
    lines = report.read_text().splitlines()
    assert len(lines) == 2 * len(first)  # append-only
    second = [json.loads(line) for line in lines[len(first):]]

    def structure(records):
        return [{k: v for k, v in r.items() if k != "seconds"} for r in records]

    assert structure(first) == structure(second)


def test_cli_verify_bound_exceeded_and_allow_skip(capsys, monkeypatch):
    monkeypatch.setenv("RAMAPOLY_MAX_LABELS", "5")
    argv = ["verify", "--identity", "eq-equiv", "--max-n", "5"]
    assert cli.main(argv) == 1
    out = capsys.readouterr().out
    assert "BOUND-EXCEEDED" in out
    assert cli.main(argv + ["--allow-skip"]) == 0


def test_cli_verify_config_override(tmp_path, capsys):
    cfg = tmp_path / "bounds.cfg"
    cfg.write_text("eq-general.max_n=3\n")
    assert cli.main(["verify", "--identity", "eq-general",
                     "--config", str(cfg), "--verbose"]) == 0
    out = capsys.readouterr().out
    assert out.count("pass eq-general") == 3


def test_cli_verify_list(capsys):
    assert cli.main(["verify", "--list"]) == 0
    out = capsys.readouterr().out
    for name in harness.REGISTRY:
        assert name in out
