import json

import numpy as np
import pytest

from qpband import ResultTable, Row, default_config, emit, run_experiment
from qpband.experiments import EXPERIMENTS, FIGURE_SOURCES, ExperimentConfig, reproduce


def small(experiment, **kw):
    return default_config(experiment, **kw)


class TestConfig:
    def test_known_experiments_only(self):
        with pytest.raises(ValueError):
            ExperimentConfig(experiment="resonance")

    def test_odd_chain_required(self):
        with pytest.raises(ValueError):
            ExperimentConfig(experiment="gap-sweep", n=8)

    def test_paramagnetic_ratio_domain(self):
        with pytest.raises(ValueError):
            ExperimentConfig(experiment="gap-sweep", j_over_h=(1.5,))

    def test_defaults_fill_in(self):
        cfg = default_config("convergence")
        assert cfg.depths == tuple(range(1, 9))
        assert cfg.j_over_h == (0.3, 0.5, 0.7, 0.9)


class TestEmit:
    def test_header_only_for_empty_table(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit(ResultTable(), "csv", path)
        lines = path.read_text().splitlines()
        assert lines == [
            "experiment,n,j,h,depth,seed,momentum_index,quantity_name,value_real,value_imag"
        ]

    def test_single_row_jsonl(self, tmp_path):
        table = ResultTable()
        table.add(experiment="gap-sweep", n=9, j=0.5, h=1.0, depth=6, seed=1,
                  momentum_index=None, quantity_name="gap_k0", value_real=1.0)
        path = tmp_path / "one.jsonl"
        emit(table, "json-lines", path)
        rec = json.loads(path.read_text().splitlines()[0])
        assert list(rec) == [
            "experiment", "n", "j", "h", "depth", "seed",
            "momentum_index", "quantity_name", "value_real", "value_imag",
        ]
        assert rec["momentum_index"] is None

    def test_float_serialization_round_trips(self, tmp_path):
        value = -9.203669348780085
        table = ResultTable()
        table.add(experiment="gap-sweep", n=9, j=0.3, h=1.0, depth=None, seed=None,
                  momentum_index=None, quantity_name="energy_ground_exact", value_real=value)
        path = tmp_path / "roundtrip.csv"
        emit(table, "csv", path)
        cell = path.read_text().splitlines()[1].split(",")[8]
        assert float(cell) == value

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            emit(ResultTable(), "parquet", tmp_path / "x")

    def test_rerun_is_byte_identical(self, tmp_path):
        cfg = small("gap-sweep", j_over_h=(0.4,), depth=4, seed=11)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit(run_experiment(cfg), "csv", a, cfg)
        emit(run_experiment(cfg), "csv", b, cfg)
        assert a.read_bytes() == b.read_bytes()
        manifest_a = json.loads((tmp_path / "a.csv.manifest.json").read_text())
        manifest_b = json.loads((tmp_path / "b.csv.manifest.json").read_text())
        for m in (manifest_a, manifest_b):
            m.pop("wall_clock_seconds")
            m.pop("created_unix")
        assert manifest_a == manifest_b


class TestRunners:
    def test_gap_sweep_rows(self):
        table = run_experiment(small("gap-sweep", j_over_h=(0.5,), depth=5, seed=3))
        gap = table.values("gap_k0")[0].value_real
        gap_exact = table.values("gap_k0_exact")[0].value_real
        assert abs(gap - gap_exact) < 1e-6
        assert len(table.values("energy_trace_even")) > 2
        assert table.values("energy_trace_even")[0].momentum_index == 0

    def test_convergence_rows(self):
        table = run_experiment(small("convergence", j_over_h=(0.5,), depths=(1, 2), seed=3))
        excess = [r.value_real for r in table.values("excess_energy")]
        assert len(excess) == 2
        assert excess[1] <= excess[0] + 1e-12
        assert all(e > -1e-9 for e in excess)

    def test_magnon_band_rows(self):
        table = run_experiment(small("magnon-band", j_over_h=(0.3,), depths=(3, 5), seed=3))
        disp = {r.momentum_index: r.value_real for r in table.values("dispersion")}
        exact = {r.momentum_index: r.value_real for r in table.values("dispersion_exact")}
        assert sorted(disp) == list(range(9))
        assert max(abs(disp[m] - exact[m]) for m in disp) < 1e-5

    def test_weights_rows(self):
        cfg = small("weights", j_over_h=(0.1, 0.2), n_restarts=4, depth=4, seed=3)
        table = run_experiment(cfg)
        for j in (0.1, 0.2):
            sel = table.values("z_x_selected", j=j)[0].value_real
            zmax = table.values("z_x_max_exact", j=j)[0].value_real
            runs = [r.value_real for r in table.values("z_x_run", j=j)]
            assert len(runs) == 4
            assert sel == max(runs)
            assert all(z <= zmax + 1e-9 for z in runs)

    def test_wannier_profile_rows(self):
        table = run_experiment(small("wannier-profile", j_over_h=(0.2,), n_restarts=3, depth=4, seed=3))
        profile = {r.momentum_index: r.value_real for r in table.values("mx_profile")}
        assert sorted(profile) == list(range(1, 10))
        assert profile[5] == min(profile.values())

    def test_soliton_band_rows(self):
        table = run_experiment(small("soliton-band", h_values=(0.2,), depths=(2, 4), seed=3))
        disp = {r.momentum_index: r.value_real for r in table.values("dispersion")}
        exact = {r.momentum_index: r.value_real for r in table.values("dispersion_exact")}
        assert sorted(disp) == list(range(18))
        assert max(abs(disp[m] - exact[m]) for m in disp) < 1e-4

    def test_twisted_spectrum_rows(self):
        table = run_experiment(small("twisted-spectrum", h_values=(0.3,)))
        rows = table.values("level_energy_even") + table.values("level_energy_odd")
        assert len(rows) == 512
        for r in table.values("level_energy_even"):
            assert r.momentum_index % 2 == 0
        for r in table.values("level_energy_odd"):
            assert r.momentum_index % 2 == 1

    def test_bandwidth_rows(self):
        table = run_experiment(small("bandwidth", j_over_h=(0.2,), depth=5, seed=3))
        w = table.values("bandwidth")[0].value_real
        w_exact = table.values("bandwidth_exact")[0].value_real
        w_thermo = table.values("bandwidth_thermo")[0].value_real
        assert abs(w - w_exact) < 1e-6
        assert abs(w - w_thermo) / w_thermo < 0.02

    def test_phase_stats_rows(self):
        cfg = small("phase-stats", j_over_h=(0.3,), n_runs=30, depth=2, seed=3)
        table = run_experiment(cfg)
        counts = [r.value_real for r in table.values("phi_hist_optimized")]
        assert len(counts) == 24 and sum(counts) == 30 * 8
        z_counts = [r.value_real for r in table.values("z_hist_initial")]
        assert len(z_counts) == 20 and sum(z_counts) == 30
        assert len(table.values("median_abs_phi_optimized")) == 1


class TestReproduce:
    def test_every_figure_has_sources(self):
        assert sorted(FIGURE_SOURCES) == sorted([
            "fig2a", "fig2b", "fig3", "fig4a", "fig4b",
            "fig5a-profiles", "fig5b", "figA-phases", "figA-weights", "figB-spectrum",
        ])
        for sources in FIGURE_SOURCES.values():
            assert all(s in EXPERIMENTS for s in sources)

    def test_unknown_figure(self, tmp_path):
        with pytest.raises(ValueError):
            reproduce("fig9z", tmp_path)

    def test_writes_named_experiment_files(self, tmp_path):
        paths = reproduce("figB-spectrum", tmp_path, seed=5)
        assert [p.name for p in paths] == ["twisted-spectrum.csv"]
        assert paths[0].exists()
        assert (tmp_path / "twisted-spectrum.csv.manifest.json").exists()


class TestRowAccess:
    def test_values_filters(self):
        table = ResultTable([
            Row("gap-sweep", 9, 0.1, 1.0, None, None, None, "gap_k0", 1.0, 0.0),
            Row("gap-sweep", 9, 0.2, 1.0, None, None, None, "gap_k0", 2.0, 0.0),
        ])
        assert [r.value_real for r in table.values("gap_k0", j=0.2)] == [2.0]
        assert table.values("missing") == []
