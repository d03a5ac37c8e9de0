import csv
from pathlib import Path

import numpy as np
import pytest

SCHEMA = ["experiment", "n", "j", "h", "depth", "seed",
          "momentum_index", "quantity_name", "value_real", "value_imag"]

GOLDEN_DIR = Path(__file__).resolve().parents[2] / "data" / "golden"


def _write(path, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SCHEMA)
        writer.writerows(rows)


def _row(experiment, j, h, quantity, value, index="", depth="", seed=""):
    return [experiment, 9, j, h, depth, seed, index, quantity, repr(float(value)), 0.0]


@pytest.fixture(scope="session")
def synth_data(tmp_path_factory):
    """Small handcrafted tables covering every quantity the panels read."""
    root = tmp_path_factory.mktemp("synth")
    band = -7.0 - np.cos(2 * np.pi * np.arange(9) / 9)

    rows = []
    for j in (0.3, 0.5):
        rows += [_row("gap-sweep", j, 1.0, "gap_k0", 2 - 2 * j, depth=4, seed=1),
                 _row("gap-sweep", j, 1.0, "gap_k0_exact", 2 - 2 * j),
                 _row("gap-sweep", j, 1.0, "energy_ground_exact", -9 - j),
                 _row("gap-sweep", j, 1.0, "energy_kzero_exact", -7 - j)]
        for it in range(4):
            rows += [_row("gap-sweep", j, 1.0, "energy_trace_even", -9 - j + 2.0 ** -it,
                          index=it, depth=4, seed=1),
                     _row("gap-sweep", j, 1.0, "energy_trace_odd", -7 - j + 2.0 ** -it,
                          index=it, depth=4, seed=1)]
    _write(root / "gap-sweep.csv", rows)

    rows = [_row("convergence", 0.3, 1.0, "avg_band_energy_exact", band.mean())]
    for d in (1, 2, 3):
        rows += [_row("convergence", 0.3, 1.0, "e_star", band.mean() + 10.0 ** -d, depth=d, seed=1),
                 _row("convergence", 0.3, 1.0, "excess_energy", 10.0 ** -d, depth=d, seed=1)]
    _write(root / "convergence.csv", rows)

    rows = [_row("magnon-band", 0.3, 1.0, "ground_energy_exact", -9.3),
            _row("magnon-band", 0.3, 1.0, "e_star", band.mean(), depth=6, seed=1)]
    for m in range(9):
        rows += [_row("magnon-band", 0.3, 1.0, "dispersion", band[m], index=m, depth=6, seed=1),
                 _row("magnon-band", 0.3, 1.0, "dispersion_exact", band[m], index=m)]
    _write(root / "magnon-band.csv", rows)

    rows = []
    for j in (0.3, 0.7):
        profile = 1 - 2 * np.exp(-((np.arange(1, 10) - 5) ** 2) / (1 + 4 * j))
        for r in range(1, 10):
            rows += [_row("wannier-profile", j, 1.0, "mx_profile", profile[r - 1],
                          index=r, depth=6, seed=1),
                     _row("wannier-profile", j, 1.0, "mx_profile_exact", profile[r - 1], index=r)]
    _write(root / "wannier-profile.csv", rows)

    rows = []
    for j in (0.3, 0.5):
        rows += [_row("weights", j, 1.0, "z_x_selected", 1 - j / 2, depth=6, seed=1),
                 _row("weights", j, 1.0, "z_x_max_exact", 1 - j / 2 + 0.01)]
        for m in range(9):
            rows.append(_row("weights", j, 1.0, "z_k_exact", 1 - j / 2, index=m))
        for s in range(3):
            rows.append(_row("weights", j, 1.0, "z_x_run", 1 - j / 2 - 0.05 * s, depth=6, seed=s))
    _write(root / "weights.csv", rows)

    soliton = -7.0 - np.cos(np.pi * np.arange(18) / 9)
    rows = [_row("soliton-band", 1.0, 0.5, "ground_energy_exact", -8.6),
            _row("soliton-band", 1.0, 0.5, "e_star", soliton.mean(), depth=10, seed=1)]
    for m in range(18):
        rows += [_row("soliton-band", 1.0, 0.5, "dispersion", soliton[m], index=m, depth=10, seed=1),
                 _row("soliton-band", 1.0, 0.5, "dispersion_exact", soliton[m], index=m)]
    _write(root / "soliton-band.csv", rows)

    rows = []
    for h in (0.3, 0.6):
        for m in range(18):
            for level in range(3):
                name = "level_energy_even" if m % 2 == 0 else "level_energy_odd"
                rows.append(_row("twisted-spectrum", 1.0, h, name, -7 + level * 3 - np.cos(np.pi * m / 9), index=m))
    _write(root / "twisted-spectrum.csv", rows)

    rows = []
    for j in (0.2, 0.4):
        rows += [_row("bandwidth", j, 1.0, name, value, depth=6, seed=1) for name, value in
                 (("avg_gap", 2 - j), ("bandwidth", j))]
        rows += [_row("bandwidth", j, 1.0, name, value) for name, value in
                 (("avg_gap_exact", 2 - j), ("avg_gap_thermo", 2 - j - 0.005),
                  ("bandwidth_exact", j), ("bandwidth_thermo", j - 0.002))]
    _write(root / "bandwidth.csv", rows)

    rng = np.random.default_rng(0)
    rows = []
    for j in (0.3,):
        for b in range(24):
            rows += [_row("phase-stats", j, 1.0, "phi_hist_initial", rng.integers(20, 40),
                          index=b, depth=6, seed=1),
                     _row("phase-stats", j, 1.0, "phi_hist_optimized", 800 if b in (11, 12) else 1,
                          index=b, depth=6, seed=1),
                     _row("phase-stats", j, 1.0, "phi_bin_left", -np.pi + b * np.pi / 12, index=b)]
        for b in range(20):
            rows += [_row("phase-stats", j, 1.0, "z_hist_initial", rng.integers(0, 10),
                          index=b, depth=6, seed=1),
                     _row("phase-stats", j, 1.0, "z_hist_optimized", 50 if b > 16 else 2,
                          index=b, depth=6, seed=1),
                     _row("phase-stats", j, 1.0, "z_bin_left", b / 20, index=b)]
        rows += [_row("phase-stats", j, 1.0, "z_x_max_exact", 0.96),
                 _row("phase-stats", j, 1.0, "chi2_p_initial", 0.5, depth=6, seed=1),
                 _row("phase-stats", j, 1.0, "median_abs_phi_optimized", 0.2, depth=6, seed=1),
                 _row("phase-stats", j, 1.0, "circstd_initial", 2.1, depth=6, seed=1),
                 _row("phase-stats", j, 1.0, "circstd_optimized", 0.6, depth=6, seed=1)]
    _write(root / "phase-stats.csv", rows)

    return root
