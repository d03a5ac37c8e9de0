"""Reference product states and bare quasiparticle momentum states.

These are the exactly solvable-limit states the VQE drivers start from and
the exact-diagonalization gauge fixing refers back to: single spin flips on
an X-polarized background (J = 0 magnons) and single domain walls of the
twisted chain (h = 0 solitons).
"""

from __future__ import annotations

import numpy as np

from .statevector import StateVector, apply_symmetry, new_product_state


def all_plus(n: int) -> StateVector:
    return new_product_state(n, ["plus"] * n)


def all_minus(n: int) -> StateVector:
    return new_product_state(n, ["minus"] * n)


def all_up(n: int) -> StateVector:
    return new_product_state(n, ["up"] * n)


def spin_flip(n: int, x: int) -> StateVector:
    """|-> at site x over a |+> background."""
    if not 1 <= x <= n:
        raise ValueError(f"flip site {x} outside 1..{n}")
    kets = ["plus"] * n
    kets[x - 1] = "minus"
    return new_product_state(n, kets)


def bell_pair(n: int, x1: int, x2: int) -> StateVector:
    """Single spin flip in coherent superposition of sites x1 and x2."""
    if x1 == x2:
        raise ValueError("bell pair needs two distinct sites")
    a = spin_flip(n, x1).amplitudes + spin_flip(n, x2).amplitudes
    return StateVector(n, a / np.sqrt(2.0))


def domain_wall(n: int, sigma: int, x: int) -> StateVector:
    """Bare domain-wall product state of the twisted chain.

    Generated from the all-up state by powers of the twisted translation:
    power x for sigma = +1 (rightmost spin up), power x + N for sigma = -1.
    The frustrated bond sits between sites x and x+1 (bond N for x = 0).
    """
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    if not 0 <= x <= n - 1:
        raise ValueError(f"wall position {x} outside 0..{n - 1}")
    power = x if sigma == 1 else x + n
    return apply_symmetry(all_up(n), "twisted-translate", power)


def magnon_momentum_state(n: int, k_index: int) -> StateVector:
    """(1/sqrt(N)) sum_x e^{-i k x} |flip at x>, k = 2 pi k_index / N."""
    k = 2.0 * np.pi * k_index / n
    amps = np.zeros(2**n, dtype=complex)
    for x in range(1, n + 1):
        amps += np.exp(-1j * k * x) * spin_flip(n, x).amplitudes
    return StateVector(n, amps / np.sqrt(n))


def soliton_momentum_state(n: int, m_index: int) -> StateVector:
    """(1/sqrt(2N)) sum_r e^{-i kt r} Ttilde^r |all up>, kt = pi m_index / N."""
    kt = np.pi * m_index / n
    base = all_up(n)
    amps = np.zeros(2**n, dtype=complex)
    for r in range(2 * n):
        amps += np.exp(-1j * kt * r) * apply_symmetry(base, "twisted-translate", r).amplitudes
    return StateVector(n, amps / np.sqrt(2 * n))
