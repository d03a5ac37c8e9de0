"""Symmetry-preserving alternating-layer VQE.

The circuit applies d blocks to a product initial state, block i being a
global X rotation exp(-i theta_{2i-1} sum_j X_j) followed by the bond layer
exp(-i theta_{2i} sum_j s_j Z_j Z_{j+1}) with the model's bond signs, so the
circuit commutes with the model's (twisted) translation and with parity.
Gradients come from a reverse sweep of the cost through inverse layers, and
the classical loop is deterministic quasi-Newton (L-BFGS-B) seeded through
the configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize

from .hamiltonian import ModelSpec, apply_hamiltonian, energy
from .statevector import StateVector, _flip_masks, zz_bond_sum
from . import states


@dataclass(frozen=True)
class AnsatzParams:
    """Circuit depth d and the 2d layer angles, kept unwrapped."""

    depth: int
    theta: np.ndarray

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        th = np.ascontiguousarray(self.theta, dtype=float)
        if th.shape != (2 * self.depth,):
            raise ValueError(f"expected {2 * self.depth} angles, got shape {th.shape}")
        th.flags.writeable = False
        object.__setattr__(self, "theta", th)


@dataclass(frozen=True)
class InitialState:
    """Which easy-to-prepare product (or Bell-pair) state the circuit starts from."""

    kind: str
    x: int | None = None
    x2: int | None = None
    sigma: int = 1

    @classmethod
    def all_plus(cls):
        return cls("all-plus")

    @classmethod
    def all_minus(cls):
        return cls("all-minus")

    @classmethod
    def spin_flip(cls, x: int):
        return cls("spin-flip", x=x)

    @classmethod
    def domain_wall(cls, sigma: int, x: int):
        return cls("domain-wall", x=x, sigma=sigma)

    @classmethod
    def bell_pair(cls, x1: int, x2: int):
        if x1 == x2:
            raise ValueError("bell pair needs two distinct sites")
        return cls("bell-pair", x=x1, x2=x2)

    @property
    def requires_twisted(self) -> bool:
        return self.kind == "domain-wall"

    @property
    def anchor(self) -> int | None:
        """Lattice anchor used by the momentum analysis (flip site or wall position)."""
        return self.x

    def build(self, n: int) -> StateVector:
        if self.kind == "all-plus":
            return states.all_plus(n)
        if self.kind == "all-minus":
            return states.all_minus(n)
        if self.kind == "spin-flip":
            return states.spin_flip(n, self.x)
        if self.kind == "domain-wall":
            return states.domain_wall(n, self.sigma, self.x)
        if self.kind == "bell-pair":
            return states.bell_pair(n, self.x, self.x2)
        raise ValueError(f"unknown initial state {self.kind!r}")


@dataclass(frozen=True)
class InitScheme:
    """How theta_0 is drawn: tiny noise around zero, a uniform window, or a warm start."""

    kind: str
    eps: float = 1e-2
    low: float = -np.pi / 2
    high: float = np.pi / 2
    theta_prev: tuple[float, ...] = ()

    @classmethod
    def zeros_perturbed(cls, eps: float = 1e-2):
        return cls("zeros-perturbed", eps=eps)

    @classmethod
    def uniform(cls, low: float = -np.pi / 2, high: float = np.pi / 2):
        return cls("uniform", low=low, high=high)

    @classmethod
    def warm_start(cls, theta_prev, eps: float = 1e-2):
        return cls("warm-start", eps=eps, theta_prev=tuple(float(t) for t in theta_prev))

    def draw(self, rng: np.random.Generator, n_params: int) -> np.ndarray:
        if self.kind == "zeros-perturbed":
            return rng.uniform(-self.eps, self.eps, n_params)
        if self.kind == "uniform":
            return rng.uniform(self.low, self.high, n_params)
        if self.kind == "warm-start":
            if len(self.theta_prev) > n_params:
                raise ValueError("warm start longer than requested parameter vector")
            theta = np.zeros(n_params)
            theta[: len(self.theta_prev)] = self.theta_prev
            if self.eps > 0:
                theta += rng.uniform(-self.eps, self.eps, n_params)
            return theta
        raise ValueError(f"unknown init scheme {self.kind!r}")


@dataclass(frozen=True)
class VqeConfig:
    max_iterations: int = 5000
    gradient_tolerance: float = 1e-9
    energy_tolerance: float = 1e-12
    seed: int = 0
    init_scheme: InitScheme = InitScheme.zeros_perturbed()

    def __post_init__(self):
        if self.gradient_tolerance <= 0 or self.energy_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class VqeResult:
    params: AnsatzParams
    energy: float
    trace: tuple[tuple[int, float], ...]
    final_state: StateVector
    seed: int
    converged: bool
    model: ModelSpec
    init: InitialState


def _check_compatible(model: ModelSpec, init: InitialState):
    if init.requires_twisted != model.is_twisted:
        need = "twisted" if init.requires_twisted else "plain"
        raise ValueError(f"{init.kind} initial state requires the {need} chain")


def _run_circuit(amps: np.ndarray, n: int, zz: np.ndarray, theta: np.ndarray) -> np.ndarray:
    flips = _flip_masks(n)
    for i in range(0, len(theta), 2):
        c, s = np.cos(theta[i]), -1j * np.sin(theta[i])
        for flip in flips:
            amps = c * amps + s * amps[flip]
        amps = amps * np.exp(-1j * theta[i + 1] * zz)
    return amps


def prepare_state(model: ModelSpec, params: AnsatzParams, init: InitialState) -> StateVector:
    """|psi(theta)> = U(theta) |psi0|>."""
    _check_compatible(model, init)
    zz = zz_bond_sum(model.n, model.bond_signs)
    amps = _run_circuit(init.build(model.n).amplitudes, model.n, zz, params.theta)
    return StateVector(model.n, amps)


def _generator_x(amps: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(amps)
    for flip in _flip_masks(n):
        out += amps[flip]
    return out


def cost_and_gradient(model: ModelSpec, params: AnsatzParams, init: InitialState):
    """Energy and its full analytic gradient via a reverse sweep.

    With |phi> = H|psi(theta)> pulled back through inverse layers alongside
    |psi>, each dE/dtheta_j = 2 Im <phi_j| G_j |psi_j> where G_j is the
    layer generator; total cost is about three state preparations.
    """
    _check_compatible(model, init)
    n = model.n
    zz = zz_bond_sum(n, model.bond_signs)
    flips = _flip_masks(n)
    theta = np.asarray(params.theta, dtype=float)

    psi = _run_circuit(init.build(n).amplitudes, n, zz, theta)
    phi = apply_hamiltonian(model, StateVector(n, psi)).amplitudes.copy()
    e = float(np.vdot(psi, phi).real)

    grad = np.empty_like(theta)
    for j in range(len(theta) - 1, -1, -1):
        if j % 2 == 1:  # zz layer
            grad[j] = 2.0 * np.vdot(phi, zz * psi).imag
            back = np.exp(1j * theta[j] * zz)
            psi = psi * back
            phi = phi * back
        else:  # x layer
            grad[j] = 2.0 * np.vdot(phi, _generator_x(psi, n)).imag
            c, s = np.cos(theta[j]), 1j * np.sin(theta[j])
            for flip in flips:
                psi = c * psi + s * psi[flip]
                phi = c * phi + s * phi[flip]
    return e, grad


def _cost_only(model: ModelSpec, theta: np.ndarray, psi0: np.ndarray, zz) -> float:
    psi = _run_circuit(psi0, model.n, zz, theta)
    return float(np.vdot(psi, apply_hamiltonian(model, StateVector(model.n, psi)).amplitudes).real)


def optimize(model: ModelSpec, init: InitialState, depth: int, config: VqeConfig) -> VqeResult:
    """Seeded deterministic quasi-Newton (BFGS) descent; returns the best iterate seen.

    Stops when the gradient norm drops below gradient_tolerance, when the
    energy change between accepted iterates drops below energy_tolerance, or
    at max_iterations.  Dense BFGS is cheap at these parameter counts and its
    well-conditioned steps keep the descent path short.
    """
    _check_compatible(model, init)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    rng = np.random.default_rng(config.seed)
    theta0 = config.init_scheme.draw(rng, 2 * depth)
    psi0 = init.build(model.n).amplitudes
    zz = zz_bond_sum(model.n, model.bond_signs)

    best = {"f": np.inf, "x": theta0.copy()}

    def objective(x):
        e, g = cost_and_gradient(model, AnsatzParams(depth, x), init)
        if e < best["f"]:
            best["f"], best["x"] = e, x.copy()
        return e, g

    trace = [(0, _cost_only(model, theta0, psi0, zz))]
    flat = {"hit": False}

    def record(xk):
        e = _cost_only(model, xk, psi0, zz)
        previous = trace[-1][1]
        trace.append((len(trace), e))
        if abs(previous - e) < config.energy_tolerance:
            flat["hit"] = True
            raise StopIteration

    res = minimize(
        objective,
        theta0,
        jac=True,
        method="BFGS",
        callback=record,
        options={"maxiter": config.max_iterations, "gtol": config.gradient_tolerance},
    )

    params = AnsatzParams(depth, best["x"])
    final_state = prepare_state(model, params, init)
    return VqeResult(
        params=params,
        energy=energy(model, final_state),
        trace=tuple(trace),
        final_state=final_state,
        seed=config.seed,
        converged=bool(res.status == 0 or flat["hit"]),
        model=model,
        init=init,
    )


def depth_sweep(model: ModelSpec, init: InitialState, depths, config: VqeConfig):
    """Optimize over increasing depths, warm-starting each from the previous optimum.

    The previous theta* is zero-padded (extra blocks start as the identity)
    and nudged by the seeded perturbation; each depth additionally tries a
    fresh start with the configured scheme, which lets the sweep escape flat
    warm-start traps.  If every candidate ends worse than the previous
    optimum the depth is re-run from the unperturbed padded theta*, so the
    reported energies never increase with d.
    """
    depths = list(depths)
    if any(b <= a for a, b in zip(depths, depths[1:])):
        raise ValueError("depths must be strictly increasing")
    results: list[tuple[int, VqeResult]] = []
    prev: VqeResult | None = None
    for d in depths:
        run = optimize(model, init, d, config)
        if prev is not None:
            warm_cfg = replace(config, init_scheme=InitScheme.warm_start(prev.params.theta))
            warm = optimize(model, init, d, warm_cfg)
            if warm.energy < run.energy:
                run = warm
            if run.energy > prev.energy:
                pad_cfg = replace(config, init_scheme=InitScheme.warm_start(prev.params.theta, eps=0.0))
                padded = optimize(model, init, d, pad_cfg)
                if padded.energy < run.energy:
                    run = padded
        results.append((d, run))
        prev = run
    return results
