"""Dense statevector kernels for a periodic chain of spin-1/2 sites.

Basis convention, fixed for the whole package: site i in {1..N} maps to bit
(i-1) of the basis index; bit value 0 encodes |up> (Z eigenvalue +1) and bit
value 1 encodes |down>.  Translation T sends the configuration at site i to
site i+1, i.e. T|s_1 ... s_N> = |s_N s_1 ... s_{N-1}>, so T carries a local
excitation at x to x+1.  Parity P applies X on every site.  The generalized
translation used by the twisted chain is X on site N followed by T.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MIN_SITES = 1
MAX_SITES = 16

KET_AMPLITUDES = {
    "up": np.array([1.0, 0.0], dtype=complex),
    "down": np.array([0.0, 1.0], dtype=complex),
    "plus": np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0),
    "minus": np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0),
}


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes over the 2^n_sites spin-z basis states."""

    n_sites: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not MIN_SITES <= self.n_sites <= MAX_SITES:
            raise ValueError(f"n_sites must be in [{MIN_SITES}, {MAX_SITES}], got {self.n_sites}")
        amps = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n_sites,):
            raise ValueError(f"expected {2**self.n_sites} amplitudes, got shape {amps.shape}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.n_sites

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def new_product_state(n: int, local_kets: list[str]) -> StateVector:
    """Tensor product of single-site kets, one of "up", "down", "plus", "minus".

    local_kets[i-1] is the ket at site i.
    """
    if len(local_kets) != n:
        raise ValueError(f"expected {n} local kets, got {len(local_kets)}")
    amps = np.array([1.0], dtype=complex)
    for ket in local_kets:
        if ket not in KET_AMPLITUDES:
            raise ValueError(f"unknown local ket {ket!r}")
        # site kets appended at increasing bit position: new site is the
        # slow (outer) index of the Kron product
        amps = np.kron(KET_AMPLITUDES[ket], amps)
    return StateVector(n, amps)


@lru_cache(maxsize=None)
def _flip_masks(n: int) -> tuple[np.ndarray, ...]:
    idx = np.arange(2**n)
    return tuple(idx ^ (1 << b) for b in range(n))


@lru_cache(maxsize=None)
def zz_bond_sum(n: int, bond_signs: tuple[int, ...]) -> np.ndarray:
    """sum_i s_i z_i z_{i+1} per basis state, with z = +1/-1 and i+1 mod N."""
    idx = np.arange(2**n)
    z = 1 - 2 * ((idx[:, None] >> np.arange(n)[None, :]) & 1)  # (dim, n)
    total = np.zeros(2**n, dtype=np.int64)
    for i in range(n):
        total += bond_signs[i] * z[:, i] * z[:, (i + 1) % n]
    return total


@lru_cache(maxsize=None)
def _symmetry_gather(n: int, which: str) -> np.ndarray:
    """Gather array g with (Op psi)[b] = psi[g[b]]."""
    idx = np.arange(2**n)
    mask = 2**n - 1
    if which == "translate":
        # inverse bit rotation: bit j of the source is bit j+1 of the target
        return (idx >> 1) | ((idx & 1) << (n - 1))
    if which == "parity":
        return idx ^ mask
    if which == "twisted-translate":
        # X on site N first, then translate
        return _symmetry_gather(n, "translate") ^ (1 << (n - 1))
    raise ValueError(f"unknown symmetry {which!r}")


def _gather_power(n: int, which: str, power: int) -> np.ndarray:
    periods = {"translate": n, "parity": 2, "twisted-translate": 2 * n}
    if which not in periods:
        raise ValueError(f"unknown symmetry {which!r}")
    power %= periods[which]
    g = _symmetry_gather(n, which)
    out = np.arange(2**n)
    for _ in range(power):
        out = g[out]
    return out


def apply_layer(state: StateVector, kind: str, angle: float, bond_signs=None) -> StateVector:
    """Apply one ansatz layer, exp(-i angle * G).

    kind "x-field":  G = sum_i X_i, realized as N single-qubit rotations
                     cos(angle) I - i sin(angle) X (the terms commute).
    kind "zz-bonds": G = sum_i s_i Z_i Z_{i+1}, a single diagonal phase pass;
                     bond_signs holds the s_i in {-1, +1}.
    """
    n = state.n_sites
    if kind == "x-field":
        if bond_signs is not None:
            raise ValueError("bond_signs only apply to the zz-bonds layer")
        c, s = np.cos(angle), -1j * np.sin(angle)
        amps = state.amplitudes
        for flip in _flip_masks(n):
            amps = c * amps + s * amps[flip]
        return StateVector(n, amps)
    if kind == "zz-bonds":
        if bond_signs is None:
            raise ValueError("zz-bonds layer requires bond_signs")
        signs = tuple(int(s) for s in bond_signs)
        if len(signs) != n or any(s not in (-1, 1) for s in signs):
            raise ValueError(f"bond_signs must be {n} entries of +/-1")
        phases = np.exp(-1j * angle * zz_bond_sum(n, signs))
        return StateVector(n, state.amplitudes * phases)
    raise ValueError(f"unknown layer kind {kind!r}")


def apply_symmetry(state: StateVector, which: str, power: int = 1) -> StateVector:
    """Apply translate, parity, or twisted-translate raised to an integer power."""
    g = _gather_power(state.n_sites, which, power)
    return StateVector(state.n_sites, state.amplitudes[g])


def symmetry_matrix_action(n: int, which: str, power: int = 1):
    """Return a gather index array acting on axis 0 of stacked vectors."""
    return _gather_power(n, which, power)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in a."""
    if a.n_sites != b.n_sites:
        raise ValueError(f"site mismatch: {a.n_sites} vs {b.n_sites}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def site_x_expectation(state: StateVector, site: int) -> float:
    """<X_site> with site in 1..N."""
    n = state.n_sites
    if not 1 <= site <= n:
        raise ValueError(f"site {site} outside 1..{n}")
    flipped = state.amplitudes[_flip_masks(n)[site - 1]]
    return float(np.vdot(state.amplitudes, flipped).real)


def parity_expectation(state: StateVector) -> float:
    """<P> with P the global spin flip prod_i X_i."""
    g = _symmetry_gather(state.n_sites, "parity")
    return float(np.vdot(state.amplitudes, state.amplitudes[g]).real)
