"""Everything read off a prepared quasiparticle state.

Momentum decomposition through translates, band dispersion reconstruction
from matrix elements between translated copies, scalar band observables,
quasiparticle weights and per-channel phases against the exact-diagonalization
gauge, magnetization profiles, post-selection across restarts, and the
phase/weight statistics experiment over independent seeded runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DegenerateChannelError
from .exact_diag import LabeledSpectrum, band_eigenvectors
from .hamiltonian import ModelSpec, apply_hamiltonian, energy
from .statevector import StateVector, site_x_expectation, symmetry_matrix_action
from .states import spin_flip
from .vqe import InitialState, VqeConfig, VqeResult, optimize, prepare_state, AnsatzParams

DISPERSION_IMAG_TOL = 1e-9
PHASE_BINS = 24
WEIGHT_BINS = 20


def wrap_angle(phi):
    """Reduce angles to (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(phi), 2.0 * np.pi)


@dataclass(frozen=True)
class MomentumComponent:
    momentum_index: int
    vector: np.ndarray
    weight: float


@dataclass(frozen=True)
class MomentumDecomposition:
    kind: str  # "plain" (period N) or "twisted" (period 2N)
    components: list[MomentumComponent]

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.components])


def momentum_decompose(state: StateVector, kind: str, anchor_x: int = 0) -> MomentumDecomposition:
    """Split a state into translation (or twisted-translation) eigencomponents.

    component(k) = (1/M) sum_n e^{-i k (anchor_x + n)} T^n |state>, so for a
    state localized at anchor_x the components line up in phase with the bare
    momentum states built on the same anchor.
    """
    n = state.n_sites
    if kind == "plain":
        period, which = n, "translate"
    elif kind == "twisted":
        period, which = 2 * n, "twisted-translate"
    else:
        raise ValueError(f"unknown decomposition kind {kind!r}")
    translated = np.stack(
        [state.amplitudes[symmetry_matrix_action(n, which, r)] for r in range(period)]
    )
    ks = 2.0 * np.pi * np.arange(period) / period
    comps = []
    for m in range(period):
        phases = np.exp(-1j * ks[m] * (anchor_x + np.arange(period)))
        vec = (phases @ translated) / period
        comps.append(MomentumComponent(m, vec, float(np.vdot(vec, vec).real)))
    return MomentumDecomposition(kind, comps)


def dispersion_from_wannier(model: ModelSpec, state: StateVector) -> np.ndarray:
    """Band energies from one localized state: eps_k = sum_n e^{ikn} <T^n psi|H|psi>.

    The matrix elements between translated copies are the Fourier transform of
    the per-channel energies, so a single prepared Wannier state yields the
    whole band.  A large imaginary residual means the state broke the
    translation symmetry (or never converged) and is reported as an error.
    """
    n = model.n
    period = model.momentum_period
    h_amps = apply_hamiltonian(model, state).amplitudes
    f = np.array(
        [
            np.vdot(state.amplitudes[symmetry_matrix_action(n, model.translation, r)], h_amps)
            for r in range(period)
        ]
    )
    eps = period * np.fft.ifft(f)
    if np.abs(eps.imag).max() > DISPERSION_IMAG_TOL:
        raise ConsistencyError(
            f"dispersion has imaginary residual {np.abs(eps.imag).max():.2e}; "
            "state is not translation-symmetric enough"
        )
    return eps.real


@dataclass(frozen=True)
class BandReport:
    """Scalar band observables assembled from optimized runs."""

    dispersion: np.ndarray | None
    avg_band_energy: float | None
    ground_energy: float
    gap_k0: float
    avg_gap: float | None
    bandwidth: float | None


def band_scalars(
    ground_result: VqeResult,
    wannier_result: VqeResult,
    bellpair_result: VqeResult | None = None,
) -> BandReport:
    """Assemble gap/bandwidth observables from a (ground, band, [bell-pair]) trio.

    Passing the all-minus run in place of the Wannier run yields just the k=0
    gap; with a spin-flip Wannier run the full dispersion, the average gap,
    and (given the Bell-pair run at |x1-x2| = 1) the bandwidth W = E*_1 - E*_2
    are filled in.
    """
    model = ground_result.model
    if model.is_twisted:
        raise ValueError("band scalars are defined for the plain chain")
    for r in (wannier_result, bellpair_result):
        if r is not None and r.model != model:
            raise ValueError("results come from different models")
    e_ground = ground_result.energy

    if wannier_result.init.kind == "all-minus":
        return BandReport(None, None, e_ground, wannier_result.energy - e_ground, None, None)
    if wannier_result.init.kind != "spin-flip":
        raise ValueError(f"unexpected band run initial state {wannier_result.init.kind!r}")

    dispersion = dispersion_from_wannier(model, wannier_result.final_state)
    avg_band = float(dispersion.mean())
    bandwidth = None
    if bellpair_result is not None:
        y = abs(bellpair_result.init.x - bellpair_result.init.x2)
        if y not in (1, model.n - 1):
            raise ValueError("bandwidth protocol needs the Bell pair on adjacent sites")
        bandwidth = wannier_result.energy - bellpair_result.energy
    return BandReport(
        dispersion=dispersion,
        avg_band_energy=avg_band,
        ground_energy=e_ground,
        gap_k0=float(dispersion[0]) - e_ground,
        avg_gap=wannier_result.energy - e_ground,
        bandwidth=bandwidth,
    )


@dataclass(frozen=True)
class WeightPhases:
    z_x: float
    phi_k: np.ndarray


def weight_and_phases(state: StateVector, spectrum: LabeledSpectrum, anchor_x: int) -> WeightPhases:
    """Quasiparticle weight against the bare flip at anchor_x, and per-channel phases.

    phi_k is the argument of the overlap between the k-component of the state
    and the gauge-fixed exact band eigenstate, reduced to (-pi, pi].
    """
    model = spectrum.model
    if model.is_twisted:
        raise ValueError("weights and phases are defined for the plain chain")
    n = model.n
    z_x = abs(np.vdot(spin_flip(n, anchor_x).amplitudes, state.amplitudes)) ** 2
    decomp = momentum_decompose(state, "plain", anchor_x)
    weights = decomp.weights
    if weights.min() < 1.0 / (10.0 * n):
        raise DegenerateChannelError(
            f"momentum channel weight {weights.min():.3e} below 1/(10N); "
            "state left the single-quasiparticle band"
        )
    band = band_eigenvectors(spectrum)
    phi = np.array(
        [np.angle(np.vdot(band[c.momentum_index], c.vector)) for c in decomp.components]
    )
    return WeightPhases(float(z_x), wrap_angle(phi))


def magnetization_profile(state: StateVector) -> np.ndarray:
    """<X_r> for r = 1..N."""
    return np.array([site_x_expectation(state, r) for r in range(1, state.n_sites + 1)])


def post_select(runs: list[VqeResult], spectrum: LabeledSpectrum, anchor_x: int) -> VqeResult:
    """Pick the restart with the largest quasiparticle weight.

    Unconverged runs are ignored whenever a converged one exists; ties go to
    the lower energy, then the lower seed.
    """
    if not runs:
        raise ValueError("no runs to select from")
    if any(r.model != runs[0].model or r.init != runs[0].init for r in runs):
        raise ValueError("runs mix models or initial states")
    pool = [r for r in runs if r.converged] or list(runs)
    keyed = [
        (-weight_and_phases(r.final_state, spectrum, anchor_x).z_x, r.energy, r.seed, r)
        for r in pool
    ]
    keyed.sort(key=lambda t: t[:3])
    return keyed[0][3]


@dataclass(frozen=True)
class PhaseStatistics:
    """Relative-phase and weight statistics over independent seeded runs."""

    phi_initial: np.ndarray
    phi_optimized: np.ndarray
    z_initial: np.ndarray
    z_optimized: np.ndarray
    phi_bin_edges: np.ndarray
    z_bin_edges: np.ndarray
    phi_histogram_initial: np.ndarray
    phi_histogram_optimized: np.ndarray
    z_histogram_initial: np.ndarray
    z_histogram_optimized: np.ndarray
    energies: np.ndarray
    seeds: np.ndarray


def _relative_phases(phi: np.ndarray) -> np.ndarray:
    return wrap_angle(phi[1:] - phi[0])


def phase_stats_single_run(model, depth, init_scheme, seed, anchor_x, config=None):
    """One seeded run of the statistics experiment: phases/weights at theta_in and theta*."""
    from .exact_diag import cached_spectrum

    spectrum = cached_spectrum(model)
    base = config or VqeConfig()
    cfg = VqeConfig(
        max_iterations=base.max_iterations,
        gradient_tolerance=base.gradient_tolerance,
        energy_tolerance=base.energy_tolerance,
        seed=seed,
        init_scheme=init_scheme,
    )
    init = InitialState.spin_flip(anchor_x)
    theta_in = init_scheme.draw(np.random.default_rng(seed), 2 * depth)
    pre_state = prepare_state(model, AnsatzParams(depth, theta_in), init)
    pre = weight_and_phases(pre_state, spectrum, anchor_x)
    run = optimize(model, init, depth, cfg)
    post = weight_and_phases(run.final_state, spectrum, anchor_x)
    return (
        _relative_phases(pre.phi_k),
        _relative_phases(post.phi_k),
        pre.z_x,
        post.z_x,
        run.energy,
    )


def _stats_worker(args):
    return phase_stats_single_run(*args)


def phase_statistics_experiment(
    model: ModelSpec,
    n_runs: int,
    depth: int,
    init_scheme,
    seed: int,
    anchor_x: int | None = None,
    config: VqeConfig | None = None,
    workers: int = 1,
) -> PhaseStatistics:
    """Collect phi_k (relative to the k=0 channel) and Z_x over n_runs seeded runs.

    Statistics are taken both at the drawn initializations and after
    optimization.  Runs fan out over a process pool when workers > 1; results
    are reduced in seed order either way, so the output is deterministic.
    """
    if n_runs < 30:
        raise ValueError("statistics need at least 30 runs")
    if model.is_twisted:
        raise ValueError("the statistics experiment targets the plain chain")
    anchor = anchor_x if anchor_x is not None else (model.n + 1) // 2
    seeds = np.arange(seed, seed + n_runs)
    args = [(model, depth, init_scheme, int(s), anchor, config) for s in seeds]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_stats_worker, args))
    else:
        rows = [_stats_worker(a) for a in args]
    phi_pre = np.concatenate([r[0] for r in rows])
    phi_post = np.concatenate([r[1] for r in rows])
    z_pre = np.array([r[2] for r in rows])
    z_post = np.array([r[3] for r in rows])
    energies = np.array([r[4] for r in rows])

    phi_edges = np.linspace(-np.pi, np.pi, PHASE_BINS + 1)
    z_edges = np.linspace(0.0, 1.0, WEIGHT_BINS + 1)
    return PhaseStatistics(
        phi_initial=phi_pre,
        phi_optimized=phi_post,
        z_initial=z_pre,
        z_optimized=z_post,
        phi_bin_edges=phi_edges,
        z_bin_edges=z_edges,
        phi_histogram_initial=np.histogram(phi_pre, phi_edges)[0],
        phi_histogram_optimized=np.histogram(phi_post, phi_edges)[0],
        z_histogram_initial=np.histogram(z_pre, z_edges)[0],
        z_histogram_optimized=np.histogram(z_post, z_edges)[0],
        energies=energies,
        seeds=seeds,
    )
