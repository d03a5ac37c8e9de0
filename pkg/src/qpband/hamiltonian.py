"""Matrix-free (twisted) transverse-field Ising Hamiltonians and band integrals.

H = - sum_i J_i Z_i Z_{i+1} - h sum_i X_i on a periodic chain, with J_i = J
everywhere (plain chain) or J_i = J for i < N and J_N = -J (twisted chain,
one antiferromagnetic bond between sites N and 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConsistencyError
from .statevector import StateVector, _flip_masks, zz_bond_sum

ENERGY_IMAG_TOL = 1e-8


@dataclass(frozen=True)
class ModelSpec:
    """Chain length, couplings, and the per-bond sign pattern."""

    n: int
    j: float
    h: float
    bond_signs: tuple[int, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not 3 <= self.n <= 16:
            raise ValueError(f"n must be in [3, 16], got {self.n}")
        if self.j < 0 or self.h < 0 or (self.j == 0 and self.h == 0):
            raise ValueError("couplings must satisfy j >= 0, h >= 0, not both zero")
        signs = self.bond_signs
        if signs is None:
            signs = (1,) * self.n
        signs = tuple(int(s) for s in signs)
        plain = (1,) * self.n
        twisted = (1,) * (self.n - 1) + (-1,)
        if signs not in (plain, twisted):
            raise ValueError("bond_signs must be all +1, or -1 on bond N only")
        object.__setattr__(self, "bond_signs", signs)

    @classmethod
    def plain(cls, n: int, j: float, h: float) -> "ModelSpec":
        return cls(n, j, h, (1,) * n)

    @classmethod
    def twisted(cls, n: int, j: float, h: float) -> "ModelSpec":
        return cls(n, j, h, (1,) * (n - 1) + (-1,))

    @property
    def is_twisted(self) -> bool:
        return self.bond_signs[-1] == -1

    @property
    def translation(self) -> str:
        """Name of the translation symmetry that commutes with this model."""
        return "twisted-translate" if self.is_twisted else "translate"

    @property
    def momentum_period(self) -> int:
        """Number of distinct momentum labels (N plain, 2N twisted)."""
        return 2 * self.n if self.is_twisted else self.n


def apply_hamiltonian(model: ModelSpec, state: StateVector) -> StateVector:
    """H|psi>, unnormalized and linear in the input."""
    if state.n_sites != model.n:
        raise ValueError(f"state has {state.n_sites} sites, model has {model.n}")
    amps = state.amplitudes
    out = (-model.j * zz_bond_sum(model.n, model.bond_signs)) * amps
    if model.h != 0.0:
        acc = np.zeros_like(amps)
        for flip in _flip_masks(model.n):
            acc += amps[flip]
        out = out - model.h * acc
    return StateVector(model.n, out)


def energy(model: ModelSpec, state: StateVector) -> float:
    """Re <psi|H|psi> for a normalized state; complains about imaginary leakage."""
    val = np.vdot(state.amplitudes, apply_hamiltonian(model, state).amplitudes)
    if abs(val.imag) > ENERGY_IMAG_TOL:
        raise ConsistencyError(f"energy expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


class BandIntegrals(NamedTuple):
    avg_gap: float
    bandwidth: float


def _dispersion_integrals(j: float, h: float, nodes: np.ndarray, weights: np.ndarray):
    eps = 2.0 * np.sqrt(h * h + j * j - 2.0 * j * h * np.cos(nodes))
    gap = float(np.dot(weights, eps))
    width = -float(np.dot(weights, eps * np.cos(nodes)))
    return gap, width


def _gauss_legendre_pair(j: float, h: float, a: float, b: float, order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    nodes = 0.5 * (b - a) * x + 0.5 * (b + a)
    weights = 0.5 * (b - a) * w
    return _dispersion_integrals(j, h, nodes, weights)


def _adaptive_pair(j: float, h: float, a: float, b: float, tol: float, depth: int):
    coarse = _gauss_legendre_pair(j, h, a, b, 32)
    fine = _gauss_legendre_pair(j, h, a, b, 64)
    if depth >= 24 or max(abs(fine[0] - coarse[0]), abs(fine[1] - coarse[1])) < tol:
        return fine
    mid = 0.5 * (a + b)
    left = _adaptive_pair(j, h, a, mid, tol / 2, depth + 1)
    right = _adaptive_pair(j, h, mid, b, tol / 2, depth + 1)
    return left[0] + right[0], left[1] + right[1]


def thermodynamic_band_integrals(j: float, h: float) -> BandIntegrals:
    """Brillouin-zone averages of the single-quasiparticle dispersion.

    avg_gap   = (1/pi) Int_0^pi 2 sqrt(h^2 + J^2 - 2 J h cos k) dk
    bandwidth = -(1/pi) Int_0^pi 2 sqrt(h^2 + J^2 - 2 J h cos k) cos k dk

    The 1/pi factor makes both the N -> infinity limits of the corresponding
    (1/N) sum_k quantities at finite size.  Gauss-Legendre with order doubling;
    falls back to adaptive bisection near j = h where the integrand loses
    smoothness.
    """
    if j < 0 or h < 0 or (j == 0 and h == 0):
        raise ValueError("need j >= 0, h >= 0, not both zero")
    prev = _gauss_legendre_pair(j, h, 0.0, np.pi, 16)
    order = 32
    while order <= 4096:
        cur = _gauss_legendre_pair(j, h, 0.0, np.pi, order)
        if max(abs(cur[0] - prev[0]), abs(cur[1] - prev[1])) < 1e-12:
            return BandIntegrals(cur[0] / np.pi, cur[1] / np.pi)
        prev = cur
        order *= 2
    gap, width = _adaptive_pair(j, h, 0.0, np.pi, 1e-12, 0)
    return BandIntegrals(gap / np.pi, width / np.pi)
