"""Fixed-step RK4 integration of closed and open dynamics.

A single trajectory is integrated sequentially; sweep points are independent
and handled by the vectorized batch kernels at the bottom, which use the
same discretization (classical RK4 with the Hamiltonian evaluated at the
step endpoints and midpoint). Nothing here renormalizes the state: norm and
trace drift are monitored invariants, and excessive drift raises instead of
being silently corrected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .linalg import DensityMatrix, DimensionMismatchError, Ket
from .models import (
    ModelKind,
    ModelSpec,
    hamiltonian_parts,
    jump_structure,
    lindblad_ops,
)
from .pulses import THREE_ATOM_SCALE, TWO_ATOM_SCALE

__all__ = [
    "IntegratorConfig",
    "IntegrationError",
    "Trajectory",
    "integrate_schrodinger",
    "integrate_lindblad",
    "integrate_hamiltonian",
    "population",
    "fidelity",
    "projected_populations",
    "closed_fidelity_grid",
    "open_fidelity_grid",
]

NORM_DRIFT_LIMIT = 1e-6
FINAL_PSD_FLOOR = -1e-6


class IntegrationError(RuntimeError):
    """Norm or trace drifted beyond tolerance; increase the step count."""


@dataclass(frozen=True)
class IntegratorConfig:
    steps: int = 20000
    store_every: int = 20

    def __post_init__(self):
        if self.steps < 100:
            raise ValueError(f"steps must be >= 100, got {self.steps}")
        if self.store_every < 1:
            raise ValueError(f"store_every must be >= 1, got {self.store_every}")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Stored time series of one integration.

    ``populations[k, i]`` is the population of basis state i at
    ``times[k]``; ``fidelity_final`` is the target-state population of the
    last stored state.
    """

    times: np.ndarray
    states: tuple
    populations: np.ndarray
    basis_labels: tuple[str, ...]
    fidelity_final: float
    t_f: float

    @property
    def n_stored(self) -> int:
        return self.times.size

    def series(self, label: str) -> np.ndarray:
        return self.populations[:, self.basis_labels.index(label)]


def _store_indices(steps: int, store_every: int) -> list[int]:
    idx = list(range(0, steps + 1, store_every))
    if idx[-1] != steps:
        idx.append(steps)
    return idx


def _initial_ket(model: ModelSpec, psi0) -> np.ndarray:
    if psi0 is None:
        return Ket.basis_state(model.dim, model.initial_index).amp.copy()
    if isinstance(psi0, Ket):
        vec = psi0.amp
    else:
        vec = np.asarray(psi0, dtype=complex)
    if vec.size != model.dim:
        raise DimensionMismatchError(
            f"initial state has dim {vec.size}, model has {model.dim}"
        )
    if abs(np.linalg.norm(vec) - 1.0) > 1e-8:
        raise ValueError("initial state must be normalized")
    return vec.astype(complex).copy()


def _drive_nodes(model: ModelSpec, t_f: float, steps: int):
    ts = np.linspace(0.0, t_f, 2 * steps + 1)
    if model.kind is ModelKind.ZENO_BASELINE:
        o = np.full(ts.shape, model.omega_z)
        return o, o
    return model.pulse.omega1(ts), model.pulse.omega2(ts)


def integrate_schrodinger(
    model: ModelSpec,
    psi0: Ket | None = None,
    cfg: IntegratorConfig | None = None,
    t_f: float | None = None,
) -> Trajectory:
    """Integrate i dpsi/dt = H(t) psi (hbar = 1) from t = 0 to t_f."""
    cfg = cfg or IntegratorConfig()
    t_f = model.t_f if t_f is None else t_f
    psi = _initial_ket(model, psi0)
    c1, c2, hc = hamiltonian_parts(model)
    o1, o2 = _drive_nodes(model, t_f, cfg.steps)
    h = t_f / cfg.steps

    stored = _store_indices(cfg.steps, cfg.store_every)
    stored_set = set(stored)
    times, states, pops = [], [], []

    def record(step: int, vec: np.ndarray) -> None:
        drift = abs(np.linalg.norm(vec) - 1.0)
        if drift > NORM_DRIFT_LIMIT:
            raise IntegrationError(
                f"norm drifted by {drift:.3e} at step {step}; increase steps"
            )
        times.append(step * h)
        states.append(Ket(vec.copy()))
        pops.append(np.abs(vec) ** 2)

    record(0, psi)
    for n in range(cfg.steps):
        k = 2 * n
        h0 = o1[k] * c1 + o2[k] * c2 + hc
        hm = o1[k + 1] * c1 + o2[k + 1] * c2 + hc
        h1 = o1[k + 2] * c1 + o2[k + 2] * c2 + hc
        k1 = -1j * (h0 @ psi)
        k2 = -1j * (hm @ (psi + 0.5 * h * k1))
        k3 = -1j * (hm @ (psi + 0.5 * h * k2))
        k4 = -1j * (h1 @ (psi + h * k3))
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if n + 1 in stored_set:
            record(n + 1, psi)

    pops_arr = np.array(pops)
    return Trajectory(
        times=np.array(times),
        states=tuple(states),
        populations=pops_arr,
        basis_labels=model.basis.labels,
        fidelity_final=float(pops_arr[-1, model.target_index]),
        t_f=t_f,
    )


def integrate_hamiltonian(
    h_of_t: Callable[[float], np.ndarray],
    t_f: float,
    psi0: Ket,
    cfg: IntegratorConfig | None = None,
    basis_labels: tuple[str, ...] | None = None,
    target_index: int = -1,
) -> Trajectory:
    """Same integrator for an arbitrary matrix-valued H(t) callable."""
    cfg = cfg or IntegratorConfig()
    psi = psi0.amp.astype(complex).copy()
    dim = psi.size
    labels = basis_labels or tuple(f"state_{i}" for i in range(dim))
    ts = np.linspace(0.0, t_f, 2 * cfg.steps + 1)
    hs = [np.asarray(h_of_t(float(t)), dtype=complex) for t in ts]
    h = t_f / cfg.steps

    stored = _store_indices(cfg.steps, cfg.store_every)
    stored_set = set(stored)
    times, states, pops = [], [], []

    def record(step: int, vec: np.ndarray) -> None:
        drift = abs(np.linalg.norm(vec) - 1.0)
        if drift > NORM_DRIFT_LIMIT:
            raise IntegrationError(
                f"norm drifted by {drift:.3e} at step {step}; increase steps"
            )
        times.append(step * h)
        states.append(Ket(vec.copy()))
        pops.append(np.abs(vec) ** 2)

    record(0, psi)
    for n in range(cfg.steps):
        k = 2 * n
        k1 = -1j * (hs[k] @ psi)
        k2 = -1j * (hs[k + 1] @ (psi + 0.5 * h * k1))
        k3 = -1j * (hs[k + 1] @ (psi + 0.5 * h * k2))
        k4 = -1j * (hs[k + 2] @ (psi + h * k3))
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if n + 1 in stored_set:
            record(n + 1, psi)

    pops_arr = np.array(pops)
    return Trajectory(
        times=np.array(times),
        states=tuple(states),
        populations=pops_arr,
        basis_labels=labels,
        fidelity_final=float(pops_arr[-1, target_index]),
        t_f=t_f,
    )


def integrate_lindblad(
    model: ModelSpec,
    rho0: DensityMatrix | None = None,
    cfg: IntegratorConfig | None = None,
    t_f: float | None = None,
) -> Trajectory:
    """Integrate the Lindblad master equation from t = 0 to t_f.

    The generator is d rho/dt = i[rho, H] + sum_k (L rho L^dag
    - (L^dag L rho + rho L^dag L)/2) on the extended basis, so the trace is
    conserved exactly (drift is pure discretization error).
    """
    cfg = cfg or IntegratorConfig()
    t_f = model.t_f if t_f is None else t_f
    if rho0 is None:
        rho = np.zeros((model.dim, model.dim), dtype=complex)
        rho[model.initial_index, model.initial_index] = 1.0
    else:
        if rho0.dim != model.dim:
            raise DimensionMismatchError(
                f"initial state has dim {rho0.dim}, model has {model.dim}"
            )
        rho = rho0.entries.astype(complex).copy()

    c1, c2, hc = hamiltonian_parts(model)
    o1, o2 = _drive_nodes(model, t_f, cfg.steps)
    jumps = [op.entries for op in lindblad_ops(model)]
    jdags = [m.conj().T for m in jumps]
    jsq = [md @ m for m, md in zip(jumps, jdags)]
    h = t_f / cfg.steps

    def rhs(ham: np.ndarray, r: np.ndarray) -> np.ndarray:
        out = 1j * (r @ ham - ham @ r)
        for m, md, msq in zip(jumps, jdags, jsq):
            out += m @ r @ md - 0.5 * (msq @ r + r @ msq)
        return out

    stored = _store_indices(cfg.steps, cfg.store_every)
    stored_set = set(stored)
    times, states, pops = [], [], []

    def record(step: int, r: np.ndarray) -> None:
        drift = abs(np.trace(r).real - 1.0)
        if drift > NORM_DRIFT_LIMIT:
            raise IntegrationError(
                f"trace drifted by {drift:.3e} at step {step}; increase steps"
            )
        times.append(step * h)
        states.append(DensityMatrix(0.5 * (r + r.conj().T)))
        pops.append(np.diag(r).real.copy())

    record(0, rho)
    for n in range(cfg.steps):
        k = 2 * n
        h0 = o1[k] * c1 + o2[k] * c2 + hc
        hm = o1[k + 1] * c1 + o2[k + 1] * c2 + hc
        h1 = o1[k + 2] * c1 + o2[k + 2] * c2 + hc
        k1 = rhs(h0, rho)
        k2 = rhs(hm, rho + 0.5 * h * k1)
        k3 = rhs(hm, rho + 0.5 * h * k2)
        k4 = rhs(h1, rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if n + 1 in stored_set:
            record(n + 1, rho)

    floor = states[-1].min_eigenvalue()
    if floor < FINAL_PSD_FLOOR:
        raise IntegrationError(
            f"final state has eigenvalue {floor:.3e} below {FINAL_PSD_FLOOR}"
        )
    pops_arr = np.array(pops)
    return Trajectory(
        times=np.array(times),
        states=tuple(states),
        populations=pops_arr,
        basis_labels=model.basis.labels,
        fidelity_final=float(abs(pops_arr[-1, model.target_index])),
        t_f=t_f,
    )


def population(state, basis_ket: Ket) -> float:
    """P = |<b|rho|b>| for mixed states, |<b|psi>|^2 for pure ones."""
    if isinstance(state, Ket):
        if state.dim != basis_ket.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {state.dim} vs {basis_ket.dim}"
            )
        return float(abs(np.vdot(basis_ket.amp, state.amp)) ** 2)
    if isinstance(state, DensityMatrix):
        if state.dim != basis_ket.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {state.dim} vs {basis_ket.dim}"
            )
        return float(abs(np.vdot(basis_ket.amp, state.entries @ basis_ket.amp)))
    raise TypeError(f"expected Ket or DensityMatrix, got {type(state)!r}")


def fidelity(final_state, target_ket: Ket) -> float:
    """Overlap of a final state with the target basis state."""
    return population(final_state, target_ket)


def projected_populations(
    traj: Trajectory, probes: dict[str, Ket]
) -> dict[str, np.ndarray]:
    """Population time series of arbitrary probe states along a trajectory."""
    out: dict[str, np.ndarray] = {}
    for name, probe in probes.items():
        vals = np.empty(traj.n_stored)
        for k, state in enumerate(traj.states):
            vals[k] = population(state, probe)
        out[name] = vals
    return out


def _scale_for(kind: ModelKind) -> float:
    return TWO_ATOM_SCALE if kind is ModelKind.TWO_ATOM else THREE_ATOM_SCALE


def closed_fidelity_grid(
    kind: ModelKind,
    epsilons: Sequence[float],
    lambda_tfs: Sequence[float],
    steps: int = 4000,
) -> np.ndarray:
    """Closed-system transfer fidelity for many (epsilon, lambda_tf) pairs.

    Vectorized RK4 in normalized time s = t/t_f, where the drive
    contribution enters as amplitude*t_f (independent of t_f for this pulse
    family) and the coupling as lambda*t_f. Matches integrate_schrodinger
    point by point at equal step counts.
    """
    if kind is ModelKind.ZENO_BASELINE:
        raise ValueError("grid integration applies to the pulsed models")
    eps = np.asarray(epsilons, dtype=float).ravel()
    ltf = np.asarray(lambda_tfs, dtype=float).ravel()
    if eps.size != ltf.size:
        raise DimensionMismatchError("epsilons and lambda_tfs differ in length")
    scale = _scale_for(kind)
    amp_tf = scale * (np.pi / 2.0) / np.tan(eps)  # pulse peak times t_f

    template = (
        ModelSpec.two_atom(0.25, 10.0)
        if kind is ModelKind.TWO_ATOM
        else ModelSpec.three_atom(0.25, 10.0)
    )
    c1, c2, hc = hamiltonian_parts(template)
    target = template.target_index
    dim = template.dim

    s_nodes = np.linspace(0.0, 1.0, 2 * steps + 1)
    env1 = np.sin(np.pi * s_nodes / 2.0)
    env2 = np.cos(np.pi * s_nodes / 2.0)

    psi = np.zeros((eps.size, dim), dtype=complex)
    psi[:, 0] = 1.0
    h = 1.0 / steps

    def rhs(node: int, p: np.ndarray) -> np.ndarray:
        a1 = (amp_tf * env1[node])[:, None]
        a2 = (amp_tf * env2[node])[:, None]
        return -1j * (a1 * (p @ c1) + a2 * (p @ c2) + ltf[:, None] * (p @ hc))

    for n in range(steps):
        k = 2 * n
        k1 = rhs(k, psi)
        k2 = rhs(k + 1, psi + 0.5 * h * k1)
        k3 = rhs(k + 1, psi + 0.5 * h * k2)
        k4 = rhs(k + 2, psi + h * k3)
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return np.abs(psi[:, target]) ** 2


def open_fidelity_grid(
    base: ModelSpec,
    kappas_over_lambda: Sequence[float],
    gammas_over_lambda: Sequence[float],
    steps: int = 3000,
) -> np.ndarray:
    """Open-system fidelity for many (kappa, gamma) pairs at a fixed drive.

    Exploits that every jump operator is a single matrix entry, so the
    dissipator reduces to an elementwise decay plus a diagonal feed term.
    Matches integrate_lindblad point by point at equal step counts.
    """
    kap = np.asarray(kappas_over_lambda, dtype=float).ravel() * base.lam
    gam = np.asarray(gammas_over_lambda, dtype=float).ravel() * base.lam
    if kap.size != gam.size:
        raise DimensionMismatchError("kappas and gammas differ in length")
    n_batch = kap.size

    c1, c2, hc = hamiltonian_parts(base)
    dim = base.dim
    entries = jump_structure(base.kind)
    rates = np.empty((n_batch, len(entries)))
    for idx, (_, _, channel) in enumerate(entries):
        rates[:, idx] = kap if channel == "cavity" else gam / 2.0
    decay = np.zeros((n_batch, dim))
    for idx, (_, j, _) in enumerate(entries):
        decay[:, j] += rates[:, idx]

    t_f = base.t_f
    o1, o2 = _drive_nodes(base, t_f, steps)
    h = t_f / steps

    rho = np.zeros((n_batch, dim, dim), dtype=complex)
    rho[:, 0, 0] = 1.0

    def rhs(ham: np.ndarray, r: np.ndarray) -> np.ndarray:
        out = 1j * (r @ ham - ham @ r)
        out -= 0.5 * (decay[:, :, None] + decay[:, None, :]) * r
        for idx, (i, j, _) in enumerate(entries):
            out[:, i, i] += rates[:, idx] * r[:, j, j].real
        return out

    for n in range(steps):
        k = 2 * n
        h0 = o1[k] * c1 + o2[k] * c2 + hc
        hm = o1[k + 1] * c1 + o2[k + 1] * c2 + hc
        h1 = o1[k + 2] * c1 + o2[k + 2] * c2 + hc
        k1 = rhs(h0, rho)
        k2 = rhs(hm, rho + 0.5 * h * k1)
        k3 = rhs(hm, rho + 0.5 * h * k2)
        k4 = rhs(h1, rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return np.abs(rho[:, base.target_index, base.target_index])
