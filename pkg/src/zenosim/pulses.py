"""Invariant-based inverse engineering of the two driving pulses.

The transfer is steered by a dynamical invariant of the 3x3 bridge
Hamiltonian. Two auxiliary angles parametrize it: a constant mixing angle
``epsilon`` and a progress angle ramping linearly from 0 to pi/2 over the
window [0, t_f]. Inverting the auxiliary equations for that choice yields a
sin/cos pulse pair with a constant envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import Ket, Op

__all__ = [
    "TWO_ATOM_SCALE",
    "THREE_ATOM_SCALE",
    "PulseParams",
    "AuxiliaryAngles",
    "PulseSchedule",
    "auxiliary_angles",
    "design_pulses",
    "invariant_matrix",
    "invariant_eigenstates",
    "lr_phase",
    "peak_photon_ratio",
    "asym_to_sym_ratio",
    "energy_gap",
    "adiabaticity_ratio",
]

TWO_ATOM_SCALE = math.sqrt(2.0)
THREE_ATOM_SCALE = math.sqrt(3.0)
_SCALES = (TWO_ATOM_SCALE, THREE_ATOM_SCALE)


def _known_scale(scale: float) -> bool:
    return any(math.isclose(scale, s, rel_tol=0.0, abs_tol=1e-12) for s in _SCALES)


@dataclass(frozen=True)
class PulseParams:
    """Design parameters: mixing angle, transfer window, subsystem scale.

    ``scale`` is sqrt(2) for the two-atom bridge and sqrt(3) for the
    three-atom one. ``chi0`` sets the (arbitrary) frequency prefactor of the
    invariant; it only rescales the invariant's spectrum.
    """

    epsilon: float
    t_f: float
    scale: float = TWO_ATOM_SCALE
    chi0: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.epsilon < math.pi / 2:
            raise ValueError(
                f"epsilon must lie in (0, pi/2), got {self.epsilon}"
            )
        if self.t_f <= 0.0:
            raise ValueError(f"t_f must be positive, got {self.t_f}")
        if not _known_scale(self.scale):
            raise ValueError(
                f"scale must be sqrt(2) or sqrt(3), got {self.scale}"
            )
        if self.chi0 <= 0.0:
            raise ValueError(f"chi0 must be positive, got {self.chi0}")


@dataclass(frozen=True)
class AuxiliaryAngles:
    """Constant mixing angle and linear progress ramp, with derivatives."""

    epsilon: float
    t_f: float

    def gamma(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.epsilon)

    def beta(self, t):
        return np.pi * np.asarray(t, dtype=float) / (2.0 * self.t_f)

    def gamma_dot(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))

    def beta_dot(self, t):
        return np.full_like(
            np.asarray(t, dtype=float), np.pi / (2.0 * self.t_f)
        )


def auxiliary_angles(params: PulseParams) -> AuxiliaryAngles:
    return AuxiliaryAngles(params.epsilon, params.t_f)


def _maybe_scalar(values: np.ndarray, t) -> float | np.ndarray:
    if np.ndim(t) == 0:
        return float(values)
    return values


@dataclass(frozen=True)
class PulseSchedule:
    """The engineered pulse pair: a shared constant envelope split sin/cos.

    Both pulses vanish identically outside [0, t_f].
    """

    epsilon: float
    t_f: float
    scale: float
    amplitude: float

    def _windowed(self, t, shape) -> float | np.ndarray:
        ts = np.asarray(t, dtype=float)
        phase = np.pi * ts / (2.0 * self.t_f)
        vals = self.amplitude * shape(phase)
        vals = np.where((ts >= 0.0) & (ts <= self.t_f), vals, 0.0)
        return _maybe_scalar(vals, t)

    def omega1(self, t):
        return self._windowed(t, np.sin)

    def omega2(self, t):
        return self._windowed(t, np.cos)


def design_pulses(params: PulseParams) -> PulseSchedule:
    """Invert the auxiliary equations for the constant-angle ramp.

    The generic inversion gives Omega_1 = scale*(beta_dot*cot(eps)*sin(beta)
    + gamma_dot*cos(beta)) and the cos partner; with gamma_dot = 0 and
    beta_dot = pi/(2 t_f) the shared peak is scale*pi*cot(eps)/(2 t_f).
    """
    amplitude = params.scale * (np.pi / (2.0 * params.t_f)) / math.tan(params.epsilon)
    return PulseSchedule(params.epsilon, params.t_f, params.scale, amplitude)


def _angles_at(params: PulseParams, t: float) -> tuple[float, float]:
    if not 0.0 <= t <= params.t_f:
        raise ValueError(f"t must lie in [0, t_f], got {t}")
    return params.epsilon, np.pi * t / (2.0 * params.t_f)


def invariant_matrix(params: PulseParams, t: float) -> Op:
    """The 3x3 dynamical invariant at time t (Hermitian by construction)."""
    g, b = _angles_at(params, t)
    cg, sg = math.cos(g), math.sin(g)
    cb, sb = math.cos(b), math.sin(b)
    pref = params.chi0 / params.scale
    m = pref * np.array(
        [
            [0.0, cg * sb, -1j * sg],
            [cg * sb, 0.0, cg * cb],
            [1j * sg, cg * cb, 0.0],
        ],
        dtype=complex,
    )
    return Op(m, hermitian=True)


def invariant_eigenstates(params: PulseParams, t: float) -> tuple[Ket, Ket, Ket]:
    """Eigenstates of the invariant at eigenvalues {0, +1, -1} (x chi0/scale).

    Returned in the order (zero mode, plus, minus).
    """
    g, b = _angles_at(params, t)
    cg, sg = math.cos(g), math.sin(g)
    cb, sb = math.cos(b), math.sin(b)
    zero = Ket(np.array([cg * cb, -1j * sg, -cg * sb]), normalized=True)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    plus = Ket(
        inv_sqrt2
        * np.array([sg * cb + 1j * sb, 1j * cg, -sg * sb + 1j * cb]),
        normalized=True,
    )
    minus = Ket(
        inv_sqrt2
        * np.array([sg * cb - 1j * sb, 1j * cg, -sg * sb - 1j * cb]),
        normalized=True,
    )
    return zero, plus, minus


def _simpson(values: np.ndarray, step: float) -> float:
    if values.size < 3 or values.size % 2 == 0:
        raise ValueError("Simpson rule needs an odd number of nodes >= 3")
    return float(
        step
        / 3.0
        * (values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-2:2].sum())
    )


def lr_phase(params: PulseParams, nodes: int = 1001) -> tuple[float, float, float]:
    """Lewis-Riesenfeld phases (alpha_0, alpha_plus, alpha_minus).

    The zero mode accumulates no phase here; the +/- modes pick up equal and
    opposite phases, evaluated by composite Simpson quadrature of the shared
    integrand. For the constant-angle ramp the closed form is
    -pi/(2 sin(eps)) for alpha_plus.
    """
    if nodes < 3 or nodes % 2 == 0:
        raise ValueError("nodes must be odd and >= 3")
    sched = design_pulses(params)
    ang = auxiliary_angles(params)
    ts = np.linspace(0.0, params.t_f, nodes)
    beta = ang.beta(ts)
    integrand = ang.beta_dot(ts) * math.sin(params.epsilon) + (
        1.0 / params.scale
    ) * (sched.omega1(ts) * np.sin(beta) + sched.omega2(ts) * np.cos(beta)) * math.cos(
        params.epsilon
    )
    integral = _simpson(integrand, ts[1] - ts[0])
    return 0.0, -integral, integral


def peak_photon_ratio(params: PulseParams, lam: float = 1.0) -> float:
    """Mid-transfer weight of the photon component of the dark state.

    Evaluated at t = t_f/2 where the photon population peaks. Only defined
    for the two-atom drive (scale sqrt(2)).
    """
    if not math.isclose(params.scale, TWO_ATOM_SCALE, rel_tol=0.0, abs_tol=1e-12):
        raise ValueError("peak_photon_ratio applies to the two-atom drive")
    cot = 1.0 / math.tan(params.epsilon)
    num = math.pi * cot
    lam_tf = lam * params.t_f
    return num / math.hypot(2.0 * math.sqrt(2.0) * lam_tf, num)


def asym_to_sym_ratio(zeta: float, beta: float) -> float:
    """|coefficient ratio| of the antisymmetric vs symmetric excitation in
    the smallest-gap eigenstates, for drive amplitude zeta*lambda.

    Returns ``math.inf`` where the two drives coincide (beta = pi/4 mod
    pi/2), which is a legal value, not an error.
    """
    if not 0.0 < zeta <= math.sqrt(2.0) + 1e-12:
        raise ValueError(f"zeta must lie in (0, sqrt(2)], got {zeta}")
    diff = -math.cos(2.0 * beta)  # == sin^2(beta) - cos^2(beta)
    if abs(diff) < 1e-12:  # equal drives: the symmetric weight vanishes
        return math.inf
    denom = zeta * zeta * diff
    return abs((2.0 + math.sqrt(zeta**4 * diff * diff + 4.0)) / denom)


def energy_gap(omega1: float, omega2: float, lam: float) -> float:
    """Smallest nonzero |eigenvalue| of the rewritten 5x5 Hamiltonian."""
    shift = math.hypot(omega1 * omega1 - omega2 * omega2, 2.0 * lam * lam)
    arg = (omega1 * omega1 + omega2 * omega2 + 2.0 * lam * lam - shift) / 2.0
    return math.sqrt(max(arg, 0.0))


def adiabaticity_ratio(params: PulseParams, t: float) -> float:
    """|theta_dot| over the instantaneous bridge gap chi/scale.

    For the engineered pulse pair the mixing angle theta equals the progress
    angle, so theta_dot = pi/(2 t_f) and the ratio is constant tan(eps).
    Computed from the schedule rather than shortcut to tan(eps).
    """
    if not 0.0 < t < params.t_f:
        raise ValueError(f"t must lie strictly inside (0, t_f), got {t}")
    sched = design_pulses(params)
    o1 = sched.omega1(t)
    o2 = sched.omega2(t)
    chi = math.hypot(o1, o2)
    if chi == 0.0:
        raise ValueError("adiabaticity ratio undefined: zero drive")
    theta_dot = np.pi / (2.0 * params.t_f)
    return theta_dot / (chi / params.scale)
