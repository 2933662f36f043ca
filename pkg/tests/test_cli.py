"""
Тесты командной строки: коды выхода, отчеты, флаги.
"""

import json

import pytest

import homforge.main as cli
from homforge import config
from homforge.errors import InputError
from homforge.loaders import fixture_path
from homforge.main import EXIT_INTERNAL, EXIT_OK, EXIT_REFUTED, EXIT_USER_ERROR, main


@pytest.fixture(autouse=True)
def restore_config(monkeypatch):
    """Флаги CLI перезаписывают config; возвращаем значения после теста."""
    for name in ("DEFAULT_SEED", "DEFAULT_WINDOW", "DEFAULT_BOUND"):
        monkeypatch.setattr(config, name, getattr(config, name))


def run_json(capsys, *argv) -> tuple[int, dict]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else {}


def test_validate_koszul(capsys):
    code, report = run_json(capsys, "validate", "--complex", fixture_path("koszul_xy.json"))
    assert code == EXIT_OK
    assert report["verdict"] == "ok"
    assert report["result"]["minimal"] is True
    assert len(report["inputs"]) == 2
    assert list(report) == ["command", "inputs", "seed", "window", "bound", "verdict", "result"]


def test_tate_betti_line(capsys):
    code, report = run_json(capsys, "tate", "--ring", fixture_path("kx2.json"), "--bound", "8")
    assert code == EXIT_OK
    assert report["result"]["betti_line"] == "1 1 1 1 1 1 1 1 1"
    assert report["bound"] == 8


def test_resolve_module(capsys):
    code, report = run_json(capsys, "resolve", "--module", fixture_path("residue_kxy2.json"), "--bound", "3")
    assert code == EXIT_OK
    assert report["result"]["betti_line"] == "1 2 3 4"


def test_hom_dimension(capsys):
    code, report = run_json(capsys, "hom", "--source", fixture_path("stalkA.json"),
                            "--target", fixture_path("two_term_x.json"))
    assert code == EXIT_OK
    assert report["result"]["dimension"] == 1


def test_ar_with_ring_override(capsys):
    code, report = run_json(capsys, "ar", "--complex", fixture_path("stalkA.json"),
                            "--ring", fixture_path("kx2.json"), "--seed", "4")
    assert code == EXIT_OK
    assert report["seed"] == 4
    assert report["result"]["axioms"]["ok"]


def test_iso_verdict(capsys):
    code, report = run_json(capsys, "iso", "--left", fixture_path("stalkA.json"),
                            "--right", fixture_path("two_term_x.json"))
    assert code == EXIT_OK
    assert report["verdict"] == "not-isomorphic"


def test_miyata_triangle(capsys):
    code, report = run_json(capsys, "miyata", "--triangle", fixture_path("cone_x.json"))
    assert code == EXIT_OK
    assert report["verdict"] == "hypothesis-not-met"


def test_cone_family(capsys):
    code, report = run_json(capsys, "cone-family", "--endo", fixture_path("id_graded.json"), "--count", "3")
    assert code == EXIT_OK
    assert report["result"]["h0_dimensions"] == [1, 2, 3]
    assert report["result"]["pairwise_non_isomorphic"]


def test_out_file(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["cohomology", "--complex", fixture_path("two_term_x.json"), "--out", str(out)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["command"] == "cohomology"
    assert report["result"]["euler_characteristic"] is True


def test_text_format(capsys):
    code = main(["minimize", "--complex", fixture_path("two_term_x.json"), "--format", "text"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "Вердикт: ok" in out
    assert "width: 1" in out


def test_unknown_suite(capsys):
    assert main(["suite", "nonexistent"]) == EXIT_USER_ERROR
    assert "Ошибка" in capsys.readouterr().err


def test_missing_file(capsys, tmp_path):
    assert main(["validate", "--complex", str(tmp_path / "missing.json")]) == EXIT_USER_ERROR
    assert "Ошибка" in capsys.readouterr().err


def test_ring_required(capsys):
    assert main(["koszul", "--elements", "x"]) == EXIT_USER_ERROR


def test_no_command(capsys):
    assert main([]) == EXIT_USER_ERROR


def test_quick_suite(capsys):
    code, report = run_json(capsys, "suite", "quick", "--seed", "0")
    assert code == EXIT_OK
    assert report["result"]["passed"] == report["result"]["total"] == 4
    tate = next(item for item in report["result"]["items"] if item["title"] == "tate")
    assert tate["details"]["kx3"]["tate"] == [1] * 7


def test_validate_reports_violation(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({
        "ring": fixture_path("kx2.json"),
        "terms": {"-1": {"rank": 1}, "0": {"rank": 1}, "1": {"rank": 1}},
        "differentials": {"-1": [["x"]], "0": [["1"]]},
    }), encoding="utf-8")
    code, report = run_json(capsys, "validate", "--complex", str(path))
    assert code == EXIT_REFUTED
    assert report["verdict"] == "violation"
    validation = report["result"]["validation"]
    assert not validation["ok"]
    assert (validation["index"], validation["entry"]) == (-1, [0, 0])


def test_broken_complex_rejected_elsewhere(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({
        "ring": fixture_path("kx2.json"),
        "terms": {"-1": {"rank": 1}, "0": {"rank": 1}, "1": {"rank": 1}},
        "differentials": {"-1": [["1"]], "0": [["1"]]},
    }), encoding="utf-8")
    assert main(["cohomology", "--complex", str(path)]) == EXIT_USER_ERROR


def test_bad_environment_value(capsys, monkeypatch):
    monkeypatch.setattr(config, "ENV_ERRORS", [])
    monkeypatch.setenv("HOMFORGE_SEED", "abc")
    assert config._int_env("HOMFORGE_SEED", 7) == 7
    with pytest.raises(InputError):
        config.validate()
    assert main(["suite", "quick"]) == EXIT_USER_ERROR
    assert "HOMFORGE_SEED" in capsys.readouterr().err


def test_miyata_random_inconsistency_exit(capsys, monkeypatch):
    monkeypatch.setattr(cli, "miyata_random_suite",
                        lambda algebras, seed, count: {"inconsistencies": 1, "failures": []})
    code = main(["miyata", "--random", "2", "--ring", fixture_path("kx2.json")])
    assert code == EXIT_INTERNAL
    assert "Мияты" in capsys.readouterr().err
