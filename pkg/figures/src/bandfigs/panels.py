"""One render function per panel; all data comes from the loaded tables."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import FigureSpec, SchemaError, load_table, quantity

# fixed, seedless style so repeated renders are pixel-identical
STYLE = {
    "figure.dpi": 150,
    "savefig.dpi": 150,
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.25,
    "lines.markersize": 5,
}

VQE_COLOR = "#c0392b"
EXACT_COLOR = "#2c5f9e"


def _ratios(df):
    return sorted(df["j"].unique())


def _signed_momentum(index, period):
    """Map a momentum index to its signed fraction of pi."""
    folded = np.where(index <= period // 2, index, index - period)
    return 2.0 * folded / period


def render_fig2a(tables):
    df = tables["gap-sweep"]
    ratios = _ratios(df)
    ratio = 0.5 if 0.5 in ratios else ratios[len(ratios) // 2]
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    for name, label, color in (
        ("energy_trace_even", "even sector (ground)", EXACT_COLOR),
        ("energy_trace_odd", "odd sector (k=0 magnon)", "#d07020"),
    ):
        rows = quantity(df, name, j=ratio)
        ax.plot(rows["momentum_index"], rows["value_real"], "-", color=color, lw=1.2, label=label)
    for name, color in (("energy_ground_exact", EXACT_COLOR), ("energy_kzero_exact", "#d07020")):
        ax.axhline(quantity(df, name, j=ratio)["value_real"].iloc[0], ls="--", lw=0.9, color=color)
    ax.set_xlabel("iteration")
    ax.set_ylabel("energy")
    ax.set_title(f"optimizer convergence at J/h = {ratio}")
    ax.legend(frameon=False)
    return fig


def render_fig2b(tables):
    df = tables["gap-sweep"]
    ratios = _ratios(df)
    gap = [quantity(df, "gap_k0", j=r)["value_real"].iloc[0] for r in ratios]
    exact = [quantity(df, "gap_k0_exact", j=r)["value_real"].iloc[0] for r in ratios]
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    ax.plot(ratios, exact, "--", color=EXACT_COLOR, lw=1.2, label="exact diagonalization")
    ax.plot(ratios, gap, "o", color=VQE_COLOR, label="VQE")
    ax.set_xlabel("J/h")
    ax.set_ylabel(r"band gap $\Delta_g$")
    ax.legend(frameon=False)
    return fig


def render_fig3(tables):
    df = tables["convergence"]
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    inset = ax.inset_axes([0.52, 0.45, 0.44, 0.5])
    for i, ratio in enumerate(_ratios(df)):
        rows = quantity(df, "excess_energy", j=ratio)
        depths = rows["depth"].to_numpy()
        excess = rows["value_real"].to_numpy()
        color = plt.cm.viridis(i / max(1, len(_ratios(df)) - 1))
        ax.plot(depths, excess, "o-", color=color, lw=1.0, label=f"J/h = {ratio}")
        positive = excess > 0
        inset.semilogy(depths[positive], excess[positive], "o-", color=color, lw=0.9, ms=3)
    ax.set_xlabel("circuit depth d")
    ax.set_ylabel(r"$E^*(d) - \bar\varepsilon$")
    ax.legend(frameon=False, loc="center left", fontsize=7)
    inset.set_xlabel("d", fontsize=7)
    inset.tick_params(labelsize=6)
    return fig


def render_fig4a(tables):
    df = tables["bandwidth"]
    ratios = _ratios(df)
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    series = (
        ("avg_gap", "avg_gap_thermo", EXACT_COLOR, r"average gap $\bar\Delta$"),
        ("bandwidth", "bandwidth_thermo", VQE_COLOR, "bandwidth W"),
    )
    for name, thermo, color, label in series:
        ax.plot(ratios, [quantity(df, thermo, j=r)["value_real"].iloc[0] for r in ratios],
                "--", color=color, lw=1.1, label=rf"{label}, $N\to\infty$")
        ax.plot(ratios, [quantity(df, name, j=r)["value_real"].iloc[0] for r in ratios],
                "o", color=color, label=f"{label}, VQE")
    ax.set_xlabel("J/h")
    ax.set_ylabel("energy")
    ax.legend(frameon=False, fontsize=7)
    return fig


def _dispersion_panel(ax, df, coupling_col, coupling, marker_label):
    rows = quantity(df, "dispersion", **{coupling_col: coupling})
    exact = quantity(df, "dispersion_exact", **{coupling_col: coupling})
    period = len(rows)
    k = _signed_momentum(rows["momentum_index"].to_numpy(), period)
    order = np.argsort(k)
    ax.plot(np.sort(k), exact["value_real"].to_numpy()[order], "o", mfc="none",
            color=EXACT_COLOR, label="exact")
    ax.plot(np.sort(k), rows["value_real"].to_numpy()[order], "x",
            color=VQE_COLOR, label=marker_label)
    ax.set_xlabel(r"$k/\pi$")


def render_fig4b(tables):
    df = tables["magnon-band"]
    ratios = _ratios(df)
    fig, axes = plt.subplots(1, len(ratios), figsize=(3.0 * len(ratios), 3.1), sharey=True)
    axes = np.atleast_1d(axes)
    for ax, ratio in zip(axes, ratios):
        _dispersion_panel(ax, df[df["j"] == ratio], "j", ratio, "VQE Wannier")
        ax.axhline(quantity(df, "ground_energy_exact", j=ratio)["value_real"].iloc[0],
                   ls="--", lw=0.9, color="0.4")
        ax.set_title(f"J/h = {ratio}")
    axes[0].set_ylabel(r"$\varepsilon_k$")
    axes[0].legend(frameon=False, fontsize=7)
    return fig


def render_fig5a_profiles(tables):
    df = tables["wannier-profile"]
    fig, ax = plt.subplots(figsize=(4.4, 3.3))
    for i, ratio in enumerate(_ratios(df)):
        color = plt.cm.plasma(i / max(1, len(_ratios(df)) - 1) * 0.85)
        rows = quantity(df, "mx_profile", j=ratio)
        exact = quantity(df, "mx_profile_exact", j=ratio)
        ax.plot(exact["momentum_index"], exact["value_real"], "--", color=color, lw=0.9)
        ax.plot(rows["momentum_index"], rows["value_real"], "o-", color=color, lw=1.0,
                label=f"J/h = {ratio}")
    ax.set_xlabel("site r")
    ax.set_ylabel(r"$M_r^x = \langle X_r \rangle$")
    ax.legend(frameon=False, fontsize=7)
    return fig


def render_fig5b(tables):
    df = tables["soliton-band"]
    fields = sorted(df["h"].unique())
    fig, axes = plt.subplots(1, len(fields), figsize=(3.4 * len(fields), 3.1), squeeze=False)
    for ax, h in zip(axes[0], fields):
        _dispersion_panel(ax, df[df["h"] == h], "h", h, "VQE Wannier")
        ax.set_title(f"J = {df['j'].iloc[0]}, h = {h}")
        ax.set_xlabel(r"$\tilde{k}/\pi$")
    axes[0][0].set_ylabel(r"$\varepsilon_{\tilde k}$")
    axes[0][0].legend(frameon=False, fontsize=7)
    return fig


def _histogram_steps(ax, lefts, counts, color, label):
    width = lefts[1] - lefts[0]
    edges = np.append(lefts, lefts[-1] + width)
    ax.stairs(counts, edges, color=color, label=label, lw=1.2)


def render_figA_phases(tables):
    df = tables["phase-stats"]
    ratio = _ratios(df)[0]
    lefts = quantity(df, "phi_bin_left", j=ratio)["value_real"].to_numpy()
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    for name, color, label in (
        ("phi_hist_initial", EXACT_COLOR, "random initialization"),
        ("phi_hist_optimized", VQE_COLOR, "after optimization"),
    ):
        counts = quantity(df, name, j=ratio)["value_real"].to_numpy()
        _histogram_steps(ax, lefts, counts, color, label)
    ax.set_xlabel(r"relative phase $\phi_k$")
    ax.set_ylabel("counts")
    ax.set_title(f"J/h = {ratio}")
    ax.legend(frameon=False, fontsize=7)
    return fig


def render_figA_weights(tables):
    stats = tables["phase-stats"]
    weights = tables["weights"]
    fig, (left, right) = plt.subplots(1, 2, figsize=(7.4, 3.2))
    for i, ratio in enumerate(_ratios(stats)):
        color = plt.cm.plasma(i / max(1, len(_ratios(stats)) - 1) * 0.85)
        lefts = quantity(stats, "z_bin_left", j=ratio)["value_real"].to_numpy()
        counts = quantity(stats, "z_hist_optimized", j=ratio)["value_real"].to_numpy()
        _histogram_steps(left, lefts, counts, color, f"J/h = {ratio}")
        zmax = quantity(stats, "z_x_max_exact", j=ratio)["value_real"].iloc[0]
        left.axvline(zmax, ls=":", color=color, lw=1.0)
    left.set_xlabel(r"$Z_x$")
    left.set_ylabel("counts")
    left.legend(frameon=False, fontsize=7)
    ratios = _ratios(weights)
    right.plot(ratios, [quantity(weights, "z_x_max_exact", j=r)["value_real"].iloc[0] for r in ratios],
               "--", color=EXACT_COLOR, label=r"$Z_x^{max}$ (exact)")
    right.plot(ratios, [quantity(weights, "z_x_selected", j=r)["value_real"].iloc[0] for r in ratios],
               "o", color=VQE_COLOR, label="post-selected VQE")
    right.set_xlabel("J/h")
    right.set_ylabel(r"$Z_x$")
    right.legend(frameon=False, fontsize=7)
    return fig


def render_figB_spectrum(tables):
    df = tables["twisted-spectrum"]
    fields = sorted(df["h"].unique())
    fig, axes = plt.subplots(1, len(fields), figsize=(3.4 * len(fields), 3.3), squeeze=False)
    for ax, h in zip(axes[0], fields):
        sub = df[df["h"] == h]
        for name, color, label in (
            ("level_energy_even", EXACT_COLOR, "p = +1"),
            ("level_energy_odd", VQE_COLOR, "p = -1"),
        ):
            rows = quantity(sub, name)
            period = int(rows["momentum_index"].max()) + 1
            k = _signed_momentum(rows["momentum_index"].to_numpy(), period)
            ax.plot(k, rows["value_real"], ".", ms=2.5, color=color, label=label)
        ax.set_title(f"h = {h}")
        ax.set_xlabel(r"$\tilde{k}/\pi$")
    axes[0][0].set_ylabel("energy")
    axes[0][0].legend(frameon=False, fontsize=7, markerscale=3)
    return fig


RENDERERS = {
    "fig2a": render_fig2a,
    "fig2b": render_fig2b,
    "fig3": render_fig3,
    "fig4a": render_fig4a,
    "fig4b": render_fig4b,
    "fig5a-profiles": render_fig5a_profiles,
    "fig5b": render_fig5b,
    "figA-phases": render_figA_phases,
    "figA-weights": render_figA_weights,
    "figB-spectrum": render_figB_spectrum,
}


def render(spec: FigureSpec):
    """Render one panel to spec.output; raises before writing on any data problem."""
    if spec.figure_id not in RENDERERS:
        raise SchemaError(f"unknown figure id {spec.figure_id!r}")
    tables = {name: load_table(path) for name, path in spec.inputs.items()}
    with plt.rc_context(STYLE):
        fig = RENDERERS[spec.figure_id](tables)
        try:
            fig.savefig(spec.output, bbox_inches="tight")
        finally:
            plt.close(fig)
    return spec.output
