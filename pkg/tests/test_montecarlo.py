"""Monte Carlo driver tests: seed derivation, CSV schema, thread invariance."""

import numpy as np
import pytest

from giantlab import Graph, random_regular
from giantlab.errors import ParameterError
from giantlab._rng import derive
from giantlab.percolation import (
    MonteCarloOptions,
    csv_columns,
    monte_carlo,
    resolve_threads,
    row_fields,
    run_trial,
    summary_stats,
    write_csv,
)


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


GOLDEN_CUBIC_COLUMNS = [
    "trial", "seed", "n", "m", "p", "R",
    "c1_frac", "c2_size", "e1_frac", "excess_frac",
    "d1_frac", "d2_frac", "d3_frac",
    "core_v_frac", "core_e_frac",
    "ds2_frac", "ds3_frac",
    "bridges_frac", "noncore_giant_frac",
    "audit_e1", "audit_v1", "audit_e2", "audit_v2", "ecc_v",
]


class TestSchema:
    def test_cubic_column_order(self):
        assert csv_columns(3) == GOLDEN_CUBIC_COLUMNS

    def test_row_width_matches_columns(self):
        g = random_regular(60, 3, seed=1)
        row = run_trial(g, 0.7, 0, 99, R=4, audit=True, ecc_vertex=0)
        assert len(row_fields(row)) == len(csv_columns(3))

    def test_optional_fields_empty_not_zero(self):
        g = cycle(12)
        row = run_trial(g, 0.9, 0, 5)
        fields = dict(zip(csv_columns(2), row_fields(row)))
        assert fields["R"] == ""
        assert fields["audit_e1"] == ""
        assert fields["audit_v2"] == ""
        assert fields["ecc_v"] == ""
        assert fields["bridges_frac"] != ""

    def test_audit_fields_filled_when_enabled(self):
        g = cycle(12)
        row = run_trial(g, 1.0, 0, 5, R=3, audit=True, ecc_vertex=2)
        fields = dict(zip(csv_columns(2), row_fields(row)))
        assert fields["R"] == "3"
        assert fields["audit_e1"] == "0"
        assert fields["ecc_v"] == "6"

    def test_float_fields_roundtrip(self):
        g = random_regular(40, 3, seed=3)
        row = run_trial(g, 0.7, 0, 123)
        fields = dict(zip(csv_columns(3), row_fields(row)))
        assert float(fields["c1_frac"]) == row.c1_frac
        assert float(fields["e1_frac"]) == row.e1_frac


class TestTrials:
    def test_saturated_sample(self):
        g = cycle(20)
        rows, summary = monte_carlo(g, 1.0, trials=3, master_seed=1,
                                    options=MonteCarloOptions(threads=1))
        for row in rows:
            assert row.c1_frac == 1.0
            assert row.c2_size == 0
            assert row.e1_frac == 1.0
            assert row.core_v_frac == 1.0
            assert row.bridges_frac == 0.0
        assert summary["c1_frac"] == {"mean": 1.0, "std": 0.0, "stderr": 0.0}

    def test_trial_seeds_come_from_master(self):
        g = cycle(20)
        rows, _ = monte_carlo(g, 0.7, trials=4, master_seed=42,
                              options=MonteCarloOptions(threads=1))
        assert [r.trial for r in rows] == [0, 1, 2, 3]
        assert [r.seed for r in rows] == [derive(42, i) for i in range(4)]

    def test_master_seed_changes_rows(self):
        g = cycle(40)
        a, _ = monte_carlo(g, 0.6, trials=2, master_seed=1,
                           options=MonteCarloOptions(threads=1))
        b, _ = monte_carlo(g, 0.6, trials=2, master_seed=2,
                           options=MonteCarloOptions(threads=1))
        assert a != b

    def test_single_trial_has_zero_spread(self):
        g = cycle(20)
        _, summary = monte_carlo(g, 0.7, trials=1, master_seed=3,
                                 options=MonteCarloOptions(threads=1))
        assert summary["c1_frac"]["std"] == 0.0
        assert summary["c1_frac"]["stderr"] == 0.0

    def test_rejects_zero_trials(self):
        with pytest.raises(ParameterError):
            monte_carlo(cycle(10), 0.5, trials=0)

    def test_summary_skips_absent_columns(self):
        g = cycle(20)
        rows, summary = monte_carlo(g, 0.7, trials=2, master_seed=9,
                                    options=MonteCarloOptions(threads=1))
        assert "audit_e1" not in summary
        assert "ecc_v" not in summary
        assert "c1_frac" in summary
        stats = summary_stats(rows, 2)
        assert stats == summary


class TestThreadInvariance:
    def test_rows_identical_across_worker_counts(self):
        g = random_regular(200, 3, seed=11)
        opts_serial = MonteCarloOptions(audit=True, ecc_vertex=0, threads=1)
        opts_pool = MonteCarloOptions(audit=True, ecc_vertex=0, threads=3)
        rows1, sum1 = monte_carlo(g, 0.75, 6, R=4, master_seed=7,
                                  options=opts_serial)
        rows2, sum2 = monte_carlo(g, 0.75, 6, R=4, master_seed=7,
                                  options=opts_pool)
        assert rows1 == rows2
        assert sum1 == sum2

    def test_csv_bytes_identical_across_worker_counts(self, tmp_path):
        g = random_regular(150, 3, seed=12)
        header = ["p=0.8", "trials=5"]
        paths = []
        for threads in (1, 2):
            rows, _ = monte_carlo(g, 0.8, 5, R=3, master_seed=21,
                                  options=MonteCarloOptions(
                                      audit=True, threads=threads))
            out = tmp_path / f"t{threads}.csv"
            write_csv(out, rows, 3, header)
            paths.append(out.read_bytes())
        assert paths[0] == paths[1]

    def test_env_overrides_thread_option(self, monkeypatch):
        monkeypatch.setenv("GIANTLAB_THREADS", "5")
        assert resolve_threads(2) == 5
        monkeypatch.delenv("GIANTLAB_THREADS")
        assert resolve_threads(2) == 2
        assert resolve_threads(None) >= 1


class TestCsvFile:
    def test_header_comments_then_columns(self, tmp_path):
        g = cycle(15)
        rows, _ = monte_carlo(g, 0.9, 2, master_seed=5,
                              options=MonteCarloOptions(threads=1))
        out = tmp_path / "out.csv"
        write_csv(out, rows, 2, ["alpha=1", "beta=two"])
        lines = out.read_text().splitlines()
        assert lines[0] == "# alpha=1"
        assert lines[1] == "# beta=two"
        assert lines[2] == ",".join(csv_columns(2))
        assert len(lines) == 5
        assert lines[3].split(",")[0] == "0"

    def test_extra_grid_columns_prepend(self, tmp_path):
        g = cycle(15)
        rows, _ = monte_carlo(g, 0.9, 2, master_seed=5,
                              options=MonteCarloOptions(threads=1))
        out = tmp_path / "grid.csv"
        write_csv(out, rows, 2, [], extra=[("grid", ["0.9", "0.9"])])
        lines = out.read_text().splitlines()
        assert lines[0].startswith("grid,trial,")
        assert lines[1].startswith("0.9,0,")
