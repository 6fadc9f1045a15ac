import csv
import io
import json

import pytest

from pinnedgrowth import cli
from pinnedgrowth.report import SWEEP_COLUMNS, ExperimentConfig, dumps, rows_to_csv, run, sweep
from pinnedgrowth.errors import ConfigError, PinnedGrowthError


def _main(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_interval_3():
    report = run(ExperimentConfig(family="interval", n=3))
    q = report["quantities"]
    assert q["q"]["q_star"] == 12
    assert q["q"]["oracle_agrees"] is True
    assert q["cross_ratio"]["size"] == 5
    assert q["collinear"]["cube_sum"] == 312
    assert report["ratios"]["q_ratio"]["count"] == q["q"]["q_total"]
    assert report["absent"] == {}


def test_run_is_deterministic():
    config = ExperimentConfig(family="random", n=9, seed=4, bound=50)
    assert dumps(run(config)) == dumps(run(config))


def test_caps_mark_fields_absent():
    report = run(ExperimentConfig(family="interval", n=14, cap_points=100))
    assert report["quantities"]["collinear"] is None
    assert "collinear" in report["absent"]
    assert "q.oracle_agrees" in report["absent"]
    assert report["quantities"]["q"]["q_total"] > 0


def test_ratio_strings_have_twenty_significant_digits():
    ratio = run(ExperimentConfig(family="interval", n=8))["ratios"]["pinned_subtractive_ratio"]
    digits = ratio["value"].replace(".", "").lstrip("0")
    assert len(digits) == 20
    assert ratio["count"] == 34


@pytest.mark.parametrize("config", [
    ExperimentConfig(family="interval", n=1),
    ExperimentConfig(family="interval"),
    ExperimentConfig(family="geometric", n=3),
    ExperimentConfig(family="geometric", n=3, base="1"),
    ExperimentConfig(family="random", n=3),
    ExperimentConfig(family="gaussian-random", n=3, seed=1, bound=2),
    ExperimentConfig(family="bogus", n=3),
])
def test_run_rejects_bad_configs(config):
    with pytest.raises(PinnedGrowthError):
        run(config)


def test_sweep_rows_and_errors():
    rows = sweep(ExperimentConfig(family="interval"), [1, 3, 4])
    assert rows[0]["error"] and rows[0]["q_total"] == ""
    assert rows[1]["q_star"] == 12 and rows[1]["error"] == ""
    text = rows_to_csv(rows)
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == list(SWEEP_COLUMNS)
    assert all(len(r) == len(SWEEP_COLUMNS) for r in parsed)


def test_sweep_empty():
    assert rows_to_csv(sweep(ExperimentConfig(family="interval"), [])) == ",".join(SWEEP_COLUMNS) + "\n"


def test_sweep_rejects_unsized_family_and_unsorted_sizes(tmp_path):
    with pytest.raises(ConfigError):
        sweep(ExperimentConfig(family="file", path=str(tmp_path / "x")), [3])
    with pytest.raises(ConfigError):
        sweep(ExperimentConfig(family="interval"), [4, 3])


def test_cli_run_json(capsys):
    code, out, _ = _main(capsys, "run", "--family", "interval", "--n", "3")
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["quantities"]["q"]["q_star"] == 12


def test_cli_run_error_is_structured(capsys):
    code, out, _ = _main(capsys, "run", "--family", "interval", "--n", "1")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "ConfigError"


def test_cli_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--field", "octonion"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_cli_run_from_embedded_config(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    assert _main(capsys, "run", "--family", "random", "--n", "7", "--seed", "3", "--bound", "9",
                 "--out", str(out_path))[0] == 0
    code, out, _ = _main(capsys, "run", "--config", str(out_path))
    assert code == 0
    assert out == out_path.read_text(encoding="utf-8")


def test_cli_run_file_families(capsys, tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("0\n1\n1/2\n3\n", encoding="utf-8")
    code, out, _ = _main(capsys, "run", "--family", "file", "--input", str(path))
    assert code == 0
    rational = json.loads(out)
    code, out, _ = _main(capsys, "run", "--family", "file", "--input", str(path), "--field", "gaussian")
    assert code == 0
    gaussian = json.loads(out)
    assert gaussian["set"]["field"] == "gaussian"
    assert gaussian["quantities"]["q"] == rational["quantities"]["q"]
    gpath = tmp_path / "g.txt"
    gpath.write_text("0\n1\ni\n1+i\n", encoding="utf-8")
    code, out, _ = _main(capsys, "run", "--family", "gaussian-file", "--input", str(gpath), "--field", "gaussian")
    assert code == 0
    assert json.loads(out)["set"]["size"] == 4
    code, out, _ = _main(capsys, "run", "--family", "file", "--input", str(gpath))
    assert code == 2


def test_cli_sweep_csv(capsys, tmp_path):
    out_path = tmp_path / "s.csv"
    code, _, err = _main(capsys, "sweep", "--sizes", "3,4,5", "--out", str(out_path), "--timing")
    assert code == 0
    assert "timing" in err
    rows = list(csv.DictReader(out_path.open(encoding="utf-8")))
    assert [r["n"] for r in rows] == ["3", "4", "5"]


def test_cli_run_csv(capsys):
    code, out, _ = _main(capsys, "run", "--n", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1 and rows[0]["n"] == "4"


def test_cli_verify_exit_codes(capsys, monkeypatch):
    code, out, _ = _main(capsys, "verify", "oracles", "--quiet")
    assert code == 0
    assert "checks passed" in out

    from pinnedgrowth import verify as V

    def broken(entry):
        yield V.Check("oracles", entry.label, entry.seed, "forced", False, "forced failure")

    monkeypatch.setitem(V._SUITE_CHECKS, "oracles", broken)
    code, out, _ = _main(capsys, "verify", "oracles", "--quiet")
    assert code == 1
    assert "FAIL [oracles]" in out and "seed=" in out
