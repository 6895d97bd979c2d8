"""Tests für die Kommandozeile und die Ausgabeformate."""

from __future__ import annotations

import csv
import io
import json
import math

import pytest

from cli.app import main
from cli.commands import EXIT_VALIDATION, run_validate
from cli.config import RunConfig, parse_loss_grid, parse_n_range
from cli.log_console import LogConsole
from cli.output import render_csv, render_json
from cli.plot_script import script_path_for
from core.spin import HalfInt
from core.utils import DomainError
from core.wigner import d_value


def _run(argv):
    out = io.StringIO()
    log = io.StringIO()
    code = main(argv, console=LogConsole(stream=log), stdout=out)
    return code, out.getvalue(), log.getvalue()


def _data_lines(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def _meta(text):
    return dict(
        line[2:].split("=", 1) for line in text.splitlines() if line.startswith("# ")
    )


def test_lossless_curve_output():
    code, text, _ = _run(["curve", "--loss", "0", "--n-range", "1:100", "--jobs", "2"])
    assert code == 0
    lines = _data_lines(text)
    assert lines[0] == "n,delta_phi,shot_noise,heisenberg"
    rows = list(csv.DictReader(lines))
    assert len(rows) == 100
    for row in rows:
        n = int(row["n"])
        assert float(row["delta_phi"]) == pytest.approx(math.tan(math.pi / (n + 2)), rel=1e-9)
    meta = _meta(text)
    assert meta["n_opt"] == "none-in-range"
    assert meta["n_subshot_max"] == "none-in-range"
    assert meta["n_range"] == "1,100"
    assert meta["normalized"] == "false"


def test_curve_output_is_byte_identical():
    argv = ["curve", "--loss", "0.01", "--n-range", "1:60"]
    assert _run(argv)[1] == _run(argv + ["--jobs", "3"])[1]


def test_curve_writes_file_and_plot_script(tmp_path):
    target = tmp_path / "curve.csv"
    code, text, log = _run(["curve", "--loss", "0.1", "--n-range", "1:20", "--out", str(target)])
    assert code == 0
    assert text == ""
    assert target.read_text(encoding="utf-8").startswith("# command=curve\n")
    script = tmp_path / "curve.gp"
    assert script.exists()
    assert '"curve.csv"' in script.read_text(encoding="utf-8")
    assert "curve.gp" in log


def test_no_plot_flag(tmp_path):
    target = tmp_path / "curve.csv"
    code, _, _ = _run(
        ["curve", "--loss", "0.1", "--n-range", "1:5", "--out", str(target), "--no-plot"]
    )
    assert code == 0
    assert target.exists()
    assert not (tmp_path / "curve.gp").exists()


def test_full_loss_is_rejected():
    code, text, log = _run(["curve", "--loss", "1.0"])
    assert code == 2
    assert text == ""
    assert "loss must be < 1" in log


def test_nopt_with_lossless_point():
    code, text, _ = _run(["nopt", "--loss-grid", "0:0.5:3", "--n-range", "1:100"])
    assert code == 0
    lines = _data_lines(text)
    assert lines[0] == "loss,n_opt"
    assert lines[1] == "0,none"
    assert lines[3] == "0.5,2"
    assert _meta(text)["n_max"] == "100"


def test_nopt_log_grid():
    code, text, _ = _run(["nopt", "--loss-grid", "1e-3:0.1:4:log", "--n-range", "1:300"])
    assert code == 0
    counts = [int(line.split(",")[1]) for line in _data_lines(text)[1:]]
    assert len(counts) == 4
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert float(_meta(text)["subshot_loss_limit"]) > 0.0


def test_dist_output():
    code, text, _ = _run(["dist", "--n", "1", "--loss", "0.3", "--phi-samples", "64"])
    assert code == 0
    meta = _meta(text)
    assert float(meta["integral"]) == pytest.approx(0.85, abs=1e-12)
    assert float(meta["sharpness"]) == pytest.approx(0.5 * math.sqrt(0.7), abs=1e-12)
    rows = _data_lines(text)
    assert rows[0] == "phi,p"
    assert len(rows) == 65


def test_dist_normalized():
    code, text, _ = _run(["dist", "--n", "1", "--loss", "0.3", "--normalized"])
    assert code == 0
    meta = _meta(text)
    assert float(meta["integral"]) == pytest.approx(1.0, abs=1e-12)
    assert float(meta["unnormalized_integral"]) == pytest.approx(0.85, abs=1e-12)


def test_dist_nyquist_guard():
    code, _, log = _run(["dist", "--n", "20", "--loss", "0.1", "--phi-samples", "64"])
    assert code == 2
    assert "Nyquist" in log


def test_json_output():
    code, text, _ = _run(["curve", "--loss", "0.2", "--n-range", "1:30", "--format", "json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["config"]["command"] == "curve"
    assert isinstance(payload["config"]["n_opt"], int)
    assert [row["n"] for row in payload["rows"]] == list(range(1, 31))
    assert set(payload["rows"][0]) == {"n", "delta_phi", "shot_noise", "heisenberg"}


def test_json_writes_matplotlib_script(tmp_path):
    target = tmp_path / "dist.json"
    code, _, _ = _run(["dist", "--n", "3", "--loss", "0.1", "--format", "json", "--out", str(target)])
    assert code == 0
    assert script_path_for(target, "json") == tmp_path / "dist_plot.py"
    assert "matplotlib" in (tmp_path / "dist_plot.py").read_text(encoding="utf-8")


def test_infinity_is_written_as_text():
    assert render_csv(["x"], [(math.inf,)], {}) == "x\ninf\n"
    assert json.loads(render_json(["x"], [(math.inf,)], {"a": math.inf})) == {
        "config": {"a": "inf"},
        "rows": [{"x": "inf"}],
    }


def test_csv_metadata_lines():
    text = render_csv(["a"], [(1,)], {"flag": True, "grid": [0.5, 1.0], "name": "x"})
    assert text.splitlines() == ["# flag=true", "# grid=0.5,1", "# name=x", "a", "1"]


def test_validate_passes():
    code, text, log = _run(["validate", "--max-2j", "4"])
    assert code == 0
    assert text.startswith("check")
    assert "FAIL" not in text
    assert text.count("PASS") == 7


def test_validate_reports_injected_sign_flip():
    def flipped(j, a, b, theta):
        value = d_value(j, a, b, theta)
        return -value if (j, a, b) == (HalfInt(2), HalfInt(2), HalfInt(0)) else value

    log = io.StringIO()
    out = io.StringIO()
    code = run_validate(
        RunConfig(command="validate", max_two_j=4),
        LogConsole(stream=log),
        stdout=out,
        d_func=flipped,
    )
    assert code == EXIT_VALIDATION
    assert "FAIL: wigner vs matrix exponential at j=1, a=1, b=0" in log.getvalue()


def test_version(capsys):
    assert main(["--version"]) == 0
    assert "CanoPhase" in capsys.readouterr().out


def test_usage_error():
    code, _, _ = _run(["curve"])
    assert code == 2


def test_unwritable_output(tmp_path):
    target = tmp_path / "missing" / "curve.csv"
    code, _, log = _run(["curve", "--loss", "0.1", "--n-range", "1:3", "--out", str(target)])
    assert code == 2
    assert "cannot write output" in log


def test_parse_helpers():
    assert parse_n_range("3:40") == (3, 40)
    assert parse_loss_grid("0:0.5:3") == (0.0, 0.25, 0.5)
    assert parse_loss_grid("0.001:0.1:3:log") == pytest.approx((0.001, 0.01, 0.1))
    for bad in ("5", "a:b", "0:4", "9:3"):
        with pytest.raises(DomainError):
            parse_n_range(bad)
    for bad in ("0:1", "0:0.5:3:lin", "0:0.5:0", "0:0.5:3:log"):
        with pytest.raises(DomainError):
            parse_loss_grid(bad)


def test_json_floats_use_fixed_digits():
    text = render_json(("x", "n", "tag"), [(0.1, 3, "none")], {"loss": 1e-3, "normalized": False})
    assert '"x": 0.10000000000000001' in text
    assert '"loss": 0.001' in text
    assert '"n": 3' in text
    assert '"normalized": false' in text
    payload = json.loads(text)
    assert payload["rows"] == [{"x": 0.1, "n": 3, "tag": "none"}]
    assert render_csv(("x",), [(0.1,)], {}).splitlines()[1] == "0.10000000000000001"


def test_nopt_honours_lower_n_bound():
    code, text, _ = _run(["nopt", "--loss-grid", "0.01:0.3:3", "--n-range", "50:200"])
    assert code == 0
    counts = [line.split(",")[1] for line in _data_lines(text)[1:]]
    assert counts == ["50", "50", "50"]
    meta = _meta(text)
    assert meta["n_min"] == "50"
    assert meta["n_max"] == "200"


def test_nopt_rejects_inverted_range():
    code, _, log = _run(["nopt", "--loss-grid", "0.01:0.3:3", "--n-range", "200:50"])
    assert code == 2
    assert "n-range" in log


@pytest.mark.parametrize(
    "argv",
    [
        ["nopt", "--loss-grid", "1e-3:0.3:5:log", "--n-range", "1:150"],
        ["dist", "--n", "12", "--loss", "0.2", "--phi-samples", "256"],
    ],
)
@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_output_files_are_byte_identical(tmp_path, argv, fmt):
    first = tmp_path / f"a.{fmt}"
    second = tmp_path / f"b.{fmt}"
    assert _run(argv + ["--format", fmt, "--out", str(first)])[0] == 0
    assert _run(argv + ["--format", fmt, "--out", str(second), "--jobs", "3"])[0] == 0
    assert first.read_bytes() == second.read_bytes()
