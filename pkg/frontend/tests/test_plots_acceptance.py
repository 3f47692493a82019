"""End-to-end check against a real sweep.

Drives the giantlab command line the way a user would, then verifies
that the rendered degree figure's empirical points sit on the forecast
curves and that schema drift fails closed.
"""

import shutil
import subprocess
from contextlib import contextmanager

import pytest

from giantlab_plots import ReportInput, SchemaError, read_summary_json, read_sweep_csv, render


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL")
        raise
    print(f"ACCEPTANCE {name}: PASS")


@pytest.fixture(scope="module")
def sweep_files(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweep")
    csv_path = out / "sweep.csv"
    json_path = out / "sweep.json"
    exe = shutil.which("giantlab")
    assert exe, "giantlab command line not on PATH"
    res = subprocess.run(
        [exe, "sweep", "--kind", "regular", "-n", "1e4", "-d", "3",
         "--p-grid", "0.55:0.95:0.05", "--trials", "5", "--seed", "424242",
         "--csv", str(csv_path), "--summary", str(json_path)],
        capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    return csv_path, json_path


def test_empirical_points_sit_on_forecast_curves(sweep_files, tmp_path):
    with criterion("sweep-degree-figure"):
        csv_path, json_path = sweep_files
        table = read_sweep_csv(csv_path)
        doc = read_summary_json(json_path)
        assert len(table.labels) == 9  # 0.55 .. 0.95 step 0.05
        for label in table.labels:
            alpha = doc.forecast_value(label, "alpha")
            beta = doc.forecast_value(label, "beta")
            for k in (1, 2, 3):
                measured = table.mean(label, f"d{k}_frac")
                assert abs(measured - alpha[k - 1]) <= 0.02, (label, k)
            for k in (2, 3):
                measured = table.mean(label, f"ds{k}_frac")
                assert abs(measured - beta[k - 2]) <= 0.02, (label, k)
        written = render(ReportInput(csv_path, json_path, tmp_path))
        names = [p.name for p in written]
        assert "degrees.svg" in names
        body = (tmp_path / "degrees.svg").read_text()
        assert body.startswith("<?xml") and "<svg" in body


def test_schema_drift_fails_naming_column(sweep_files, tmp_path):
    with criterion("schema-fails-closed"):
        csv_path, json_path = sweep_files
        lines = csv_path.read_text().splitlines()
        header_at = next(i for i, ln in enumerate(lines)
                         if not ln.startswith("#"))
        cols = lines[header_at].split(",")
        drop = cols.index("c1_frac")
        mutated = tmp_path / "drifted.csv"
        body = []
        for i, ln in enumerate(lines):
            if i < header_at:
                body.append(ln)
            else:
                cells = ln.split(",")
                body.append(",".join(
                    c for j, c in enumerate(cells) if j != drop))
        mutated.write_text("\n".join(body) + "\n")
        with pytest.raises(SchemaError, match="'c1_frac'"):
            render(ReportInput(mutated, json_path, tmp_path / "figs"))
