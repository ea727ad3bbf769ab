import json
import logging

import pytest
from typer.testing import CliRunner

from aqg_lab.cli import EXIT_FAILED, EXIT_USAGE, app

runner = CliRunner()

RUN = {
    "grid": {"n1": 16, "n2": 16},
    "params": {"alpha": 0.5, "beta": 0.5},
    "solver": {"dt": 0.01, "t_end": 0.2, "diagnostics_every": 5},
    "diagnostics": {"budget_tolerance": 1e-4},
    "initial_condition": {"kind": "single_mode", "k": [1, 0]},
}


@pytest.fixture(autouse=True)
def detach_log_handlers():
    yield
    root = logging.getLogger("aqg_lab")
    for handler in [h for h in root.handlers if getattr(h, "_aqg_lab", False)]:
        root.removeHandler(handler)


@pytest.fixture
def write_config(tmp_path):
    def write(**sections) -> str:
        document = {**RUN, **sections}
        document.setdefault("output", {"directory": str(tmp_path / "run")})
        path = tmp_path / "config.json"
        path.write_text(json.dumps(document))
        return str(path)

    return write


def test_run_writes_outputs(tmp_path, write_config):
    result = runner.invoke(app, ["run", write_config()])
    assert result.exit_code == 0, result.output
    assert "records to t=0.2" in result.output
    assert (tmp_path / "run" / "summary.json").exists()


def test_failed_check_exits_one(write_config):
    config = write_config(diagnostics={"budget_tolerance": 1e-14})
    assert runner.invoke(app, ["run", config]).exit_code == EXIT_FAILED


def test_invalid_config_exits_two(write_config):
    config = write_config(params={"alpha": 1.0, "beta": 0.5})
    assert runner.invoke(app, ["run", config]).exit_code == EXIT_USAGE


def test_missing_config_file_is_a_usage_error(tmp_path):
    assert runner.invoke(app, ["run", str(tmp_path / "absent.json")]).exit_code == EXIT_USAGE


def test_malformed_sweep_axis(write_config):
    result = runner.invoke(app, ["sweep", write_config(), "--alpha", "0.2:0.8", "--beta", "0.5:0.5:1"])
    assert result.exit_code == EXIT_USAGE


def test_unknown_lemma(tmp_path):
    assert runner.invoke(app, ["verify-lemmas", "--lemma", "young"]).exit_code == EXIT_USAGE


def test_verify_single_lemma(tmp_path):
    output = tmp_path / "reports" / "lemmas.ndjson"
    result = runner.invoke(
        app,
        ["verify-lemmas", "--lemma", "sobolev-interpolation", "--samples", "5", "--output", str(output)],
    )
    assert result.exit_code == 0, result.output
    assert "passed" in result.output
    (line,) = output.read_text().splitlines()
    assert json.loads(line)["lemma"] == "sobolev-interpolation"


def test_records_to_csv(tmp_path):
    source = tmp_path / "records.ndjson"
    source.write_text('{"t": 0.0, "l2": 1.0}\n\n{"t": 0.5, "l2": 0.25}\n')
    target = tmp_path / "records.csv"
    result = runner.invoke(app, ["records-to-csv", str(source), str(target)])
    assert result.exit_code == 0
    assert target.read_text().splitlines() == ["t,l2", "0.0,1.0", "0.5,0.25"]
