"""Dense exact diagonalization with simultaneous symmetry labeling.

Ground truth for everything else in the package: full spectra of the plain
and twisted chains with every eigenvector labeled by momentum (translation
or twisted-translation eigenvalue) and parity, band extraction, and exact
quasiparticle weights.

Degenerate energy eigenspaces (raw eigensolvers return arbitrary mixtures of
the exactly degenerate +/-k partners) are resolved by projecting each cluster
onto momentum sectors with P_m = (1/M) sum_r e^{-i k_m r} T^r and
orthonormalizing via SVD; parity is resolved the same way with (1 +/- P)/2
inside each (E, k) subspace.  Eigenvector gauge: band states are rotated so
their overlap with the corresponding bare momentum state (spin flip or domain
wall) is real positive; every other state gets its largest-magnitude
amplitude made real positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapabilityError, ConsistencyError
from .hamiltonian import ModelSpec
from .statevector import StateVector, _flip_masks, symmetry_matrix_action, zz_bond_sum
from .states import magnon_momentum_state, soliton_momentum_state

MAX_DENSE_SITES = 14
DEGENERACY_TOL = 1e-9
SYMMETRY_RESIDUAL_TOL = 1e-8
_RANK_CUT = 0.5  # singular values of projected cluster bases are ~0 or ~1


@dataclass(frozen=True)
class SpectrumEntry:
    energy: float
    momentum_index: int
    parity: int
    vector: np.ndarray


@dataclass(frozen=True)
class LabeledSpectrum:
    model: ModelSpec
    entries: list[SpectrumEntry]

    @property
    def energies(self) -> np.ndarray:
        return np.array([e.energy for e in self.entries])

    def sector(self, momentum_index=None, parity=None) -> list[SpectrumEntry]:
        out = self.entries
        if momentum_index is not None:
            out = [e for e in out if e.momentum_index == momentum_index]
        if parity is not None:
            out = [e for e in out if e.parity == parity]
        return out


@dataclass(frozen=True)
class BandEnergies:
    energies: np.ndarray | None
    ground_energy: float


@dataclass(frozen=True)
class ExactWeights:
    z_k: np.ndarray
    z_x_max: float


def dense_hamiltonian(model: ModelSpec) -> np.ndarray:
    """Full 2^N x 2^N real symmetric matrix of H."""
    if model.n > MAX_DENSE_SITES:
        raise CapabilityError(f"dense diagonalization limited to N <= {MAX_DENSE_SITES}")
    dim = 2**model.n
    ham = np.zeros((dim, dim))
    idx = np.arange(dim)
    ham[idx, idx] = -model.j * zz_bond_sum(model.n, model.bond_signs)
    for flip in _flip_masks(model.n):
        ham[idx, flip] -= model.h
    return ham


def _energy_clusters(eigvals: np.ndarray) -> list[slice]:
    breaks = np.nonzero(np.diff(eigvals) > DEGENERACY_TOL)[0] + 1
    edges = [0, *breaks.tolist(), len(eigvals)]
    return [slice(a, b) for a, b in zip(edges[:-1], edges[1:])]


def _orthonormal_columns(block: np.ndarray) -> np.ndarray:
    if block.shape[1] == 0:
        return block
    u, s, _ = np.linalg.svd(block, full_matrices=False)
    return u[:, s > _RANK_CUT]


def _fix_gauge(vec: np.ndarray, reference: np.ndarray | None) -> np.ndarray:
    ov = None
    if reference is not None:
        ov = np.vdot(reference, vec)
        if abs(ov) < 1e-6:
            ov = None
    if ov is None:
        ov = vec[int(np.argmax(np.abs(vec)))]
    return vec * (abs(ov) / ov)


def full_labeled_spectrum(model: ModelSpec) -> LabeledSpectrum:
    """Diagonalize H and resolve every eigenvector into (E, k, p) labels."""
    ham = dense_hamiltonian(model)
    eigvals, eigvecs = np.linalg.eigh(ham)

    n = model.n
    period = model.momentum_period
    gathers = [symmetry_matrix_action(n, model.translation, r) for r in range(period)]
    parity_gather = symmetry_matrix_action(n, "parity", 1)
    phases = np.exp(-2j * np.pi * np.outer(np.arange(period), np.arange(period)) / period)

    labeled: list[tuple[float, int, int, np.ndarray]] = []
    for cluster in _energy_clusters(eigvals):
        basis = eigvecs[:, cluster].astype(complex)
        translated = np.stack([basis[g, :] for g in gathers])  # (period, dim, g)
        count = 0
        for m in range(period):
            proj = np.tensordot(phases[m], translated, axes=(0, 0)) / period
            sector = _orthonormal_columns(proj)
            if model.is_twisted:
                parity_blocks = [((-1) ** m, sector)]
            else:
                parity_blocks = [
                    (p, _orthonormal_columns((sector + p * sector[parity_gather, :]) / 2.0))
                    for p in (1, -1)
                ]
            for parity, block in parity_blocks:
                for col in range(block.shape[1]):
                    vec = block[:, col]
                    _check_labels(model, vec, m, parity, gathers[1], parity_gather, ham)
                    e = float(np.vdot(vec, ham @ vec).real)
                    labeled.append((e, m, parity, vec))
                    count += 1
        if count != basis.shape[1]:
            raise ConsistencyError(
                f"cluster of size {basis.shape[1]} resolved into {count} symmetry states"
            )

    labeled.sort(key=lambda t: (t[0], t[1], -t[2]))
    entries = [SpectrumEntry(e, m, p, v) for e, m, p, v in labeled]
    entries = _gauge_fix_entries(model, entries)
    return LabeledSpectrum(model, entries)


def _check_labels(model, vec, m, parity, gather_one, parity_gather, ham):
    lam = np.exp(2j * np.pi * m / model.momentum_period)
    t_res = np.linalg.norm(vec[gather_one] - lam * vec)
    p_res = np.linalg.norm(vec[parity_gather] - parity * vec)
    if t_res > SYMMETRY_RESIDUAL_TOL or p_res > SYMMETRY_RESIDUAL_TOL:
        raise ConsistencyError(
            f"symmetry residuals too large (translation {t_res:.2e}, parity {p_res:.2e})"
        )
    e = float(np.vdot(vec, ham @ vec).real)
    h_res = np.linalg.norm(ham @ vec - e * vec)
    if h_res > SYMMETRY_RESIDUAL_TOL:
        raise ConsistencyError(f"eigenvector residual {h_res:.2e}")


def _band_entry_ids(model: ModelSpec, entries: list[SpectrumEntry]) -> dict[int, int]:
    """Index of the lowest-energy entry per momentum label of the target band."""
    band: dict[int, int] = {}
    for i, e in enumerate(entries):
        if not model.is_twisted and e.parity != -1:
            continue
        if e.momentum_index not in band or e.energy < entries[band[e.momentum_index]].energy:
            band[e.momentum_index] = i
    return band


def _bare_reference(model: ModelSpec, m: int) -> np.ndarray:
    if model.is_twisted:
        return soliton_momentum_state(model.n, m).amplitudes
    return magnon_momentum_state(model.n, m).amplitudes


def _gauge_fix_entries(model, entries: list[SpectrumEntry]) -> list[SpectrumEntry]:
    band = _band_entry_ids(model, entries)
    out = []
    for i, e in enumerate(entries):
        ref = _bare_reference(model, e.momentum_index) if band.get(e.momentum_index) == i else None
        out.append(SpectrumEntry(e.energy, e.momentum_index, e.parity, _fix_gauge(e.vector, ref)))
    return out


def band_extract(spectrum: LabeledSpectrum, which: str) -> BandEnergies:
    """Pull a band out of a labeled spectrum.

    which "magnon":  lowest odd-parity state per momentum n (plain chain);
    which "soliton": lowest state per generalized momentum m (twisted chain);
    which "ground":  lowest state overall.
    """
    model = spectrum.model
    ground = min(e.energy for e in spectrum.entries)
    if which == "ground":
        return BandEnergies(None, ground)
    if which == "magnon" and model.is_twisted:
        raise ValueError("magnon band requires the plain chain")
    if which == "soliton" and not model.is_twisted:
        raise ValueError("soliton band requires the twisted chain")
    if which not in ("magnon", "soliton"):
        raise ValueError(f"unknown band {which!r}")
    band = _band_entry_ids(model, spectrum.entries)
    period = model.momentum_period
    if sorted(band) != list(range(period)):
        raise ConsistencyError(f"band has empty momentum sectors: {sorted(band)}")
    energies = np.array([spectrum.entries[band[m]].energy for m in range(period)])
    return BandEnergies(energies, ground)


def band_eigenvectors(spectrum: LabeledSpectrum) -> list[np.ndarray]:
    """Gauge-fixed eigenvectors of the target band, indexed by momentum."""
    band = _band_entry_ids(spectrum.model, spectrum.entries)
    return [spectrum.entries[band[m]].vector for m in range(spectrum.model.momentum_period)]


def exact_weights(spectrum: LabeledSpectrum) -> ExactWeights:
    """Quasiparticle weights Z_k of the magnon band and their bound Z_x^max.

    Z_k is the squared overlap of the interacting band state with the bare
    spin-flip momentum state; Z_x^max = ((1/N) sum_k sqrt(Z_k))^2 bounds the
    weight any localized superposition of band states can reach.
    """
    model = spectrum.model
    if model.is_twisted:
        raise ValueError("quasiparticle weights are defined against the plain chain")
    vecs = band_eigenvectors(spectrum)
    z_k = np.array(
        [abs(np.vdot(magnon_momentum_state(model.n, m).amplitudes, v)) ** 2
         for m, v in enumerate(vecs)]
    )
    z_x_max = float(np.mean(np.sqrt(z_k)) ** 2)
    return ExactWeights(z_k, z_x_max)


def spectrum_eigenstate(spectrum: LabeledSpectrum, index: int) -> StateVector:
    return StateVector(spectrum.model.n, spectrum.entries[index].vector)


@lru_cache(maxsize=64)
def cached_spectrum(model: ModelSpec) -> LabeledSpectrum:
    """Memoized full_labeled_spectrum; models are small frozen keys."""
    return full_labeled_spectrum(model)
