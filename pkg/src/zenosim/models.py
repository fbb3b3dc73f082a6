"""Physical models: bases, Hamiltonians, Zeno partitions, dark states,
jump operators, and the constant-drive baseline.

Two lambda-type atoms in a single-mode cavity span a five-state transfer
chain; three atoms (the middle one with two ground states) in a bimodal
cavity span a seven-state chain. Each basis is extended with absorbing leak
states so the dissipative generator is exactly trace preserving: photon loss
and decay into ground states outside the chain land there and stay (the leak
states carry no excitation and no photon, so every Hamiltonian row and
column on them is zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .linalg import Ket, Op, eig_hermitian
from .pulses import (
    THREE_ATOM_SCALE,
    TWO_ATOM_SCALE,
    PulseParams,
    PulseSchedule,
    design_pulses,
)

__all__ = [
    "ModelKind",
    "BasisCatalog",
    "ModelSpec",
    "ZenoGroup",
    "ZenoDecomposition",
    "DiagnosticSet",
    "DegenerateDarkStateError",
    "SingularCouplingError",
    "hamiltonian_parts",
    "h_total",
    "h_subsystem",
    "h_rewritten",
    "rewritten_hamiltonian",
    "rewritten_basis",
    "rewritten_labels",
    "atom_cavity_block",
    "zeno_partition",
    "dark_state",
    "gap_eigenstates",
    "zeno_baseline_state",
    "lindblad_ops",
    "jump_entries",
    "jump_structure",
    "intermediate_probes",
    "diagnostics",
]

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class ModelKind(str, Enum):
    TWO_ATOM = "two-atom"
    THREE_ATOM = "three-atom"
    ZENO_BASELINE = "zeno-baseline"


# Atom order left to right, photon slot last. "1p"/"1m" mark which circular
# polarization holds the photon in the bimodal cavity.
TWO_ATOM_LABELS = ("f_g_0", "e_g_0", "g_g_1", "g_e_0", "g_f_0", "g_g_0")
THREE_ATOM_LABELS = (
    "f_gp_gm_0",
    "e_gp_gm_0",
    "gp_gp_gm_1p",
    "gp_e_gm_0",
    "gp_gm_gm_1m",
    "gp_gm_e_0",
    "gp_gm_f_0",
    "gp_gp_gm_0",
    "gp_gm_gm_0",
)
BASELINE_LABELS = ("start", "bridge", "target")


@dataclass(frozen=True)
class BasisCatalog:
    """Ordered basis labels plus the indices of appended absorbing states."""

    labels: tuple[str, ...]
    leak_indices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.labels)


_BASES = {
    ModelKind.TWO_ATOM: BasisCatalog(TWO_ATOM_LABELS, (5,)),
    ModelKind.THREE_ATOM: BasisCatalog(THREE_ATOM_LABELS, (7, 8)),
    ModelKind.ZENO_BASELINE: BasisCatalog(BASELINE_LABELS, ()),
}

_TARGET_INDEX = {
    ModelKind.TWO_ATOM: 4,
    ModelKind.THREE_ATOM: 6,
    ModelKind.ZENO_BASELINE: 2,
}

_SCALE_BY_KIND = {
    ModelKind.TWO_ATOM: TWO_ATOM_SCALE,
    ModelKind.THREE_ATOM: THREE_ATOM_SCALE,
}


class DegenerateDarkStateError(ValueError):
    """Both drives vanish; the dark state is not unique there."""


class SingularCouplingError(ValueError):
    """Equal drives make the closed-form gap eigenstates degenerate."""


@dataclass(frozen=True)
class ModelSpec:
    """Which physical model, its rates, and its drive.

    All rates are absolute frequencies; ``lam`` is the atom-cavity coupling
    and sets the frequency unit (lam = 1 by convention). ``gamma_total`` is
    split evenly over the spontaneous-emission channels. The baseline model
    replaces the pulse pair with a constant drive ``omega_z``.
    """

    kind: ModelKind
    lam: float = 1.0
    kappa: float = 0.0
    gamma_total: float = 0.0
    pulse: PulseSchedule | None = None
    omega_z: float | None = None

    def __post_init__(self):
        if self.lam <= 0.0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if self.kappa < 0.0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")
        if self.gamma_total < 0.0:
            raise ValueError(
                f"gamma_total must be non-negative, got {self.gamma_total}"
            )
        if self.kind is ModelKind.ZENO_BASELINE:
            if self.omega_z is None or self.omega_z <= 0.0:
                raise ValueError("baseline model needs a positive omega_z")
        else:
            if self.pulse is None:
                raise ValueError(f"{self.kind.value} model needs a pulse schedule")
            expected = _SCALE_BY_KIND[self.kind]
            if not math.isclose(self.pulse.scale, expected, rel_tol=0.0, abs_tol=1e-12):
                raise ValueError(
                    f"pulse scale {self.pulse.scale} does not match {self.kind.value}"
                )

    @property
    def basis(self) -> BasisCatalog:
        return _BASES[self.kind]

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def initial_index(self) -> int:
        return 0

    @property
    def target_index(self) -> int:
        return _TARGET_INDEX[self.kind]

    @property
    def t_f(self) -> float:
        if self.kind is ModelKind.ZENO_BASELINE:
            return math.pi / self.omega_z
        return self.pulse.t_f

    @classmethod
    def two_atom(
        cls,
        epsilon: float,
        lambda_tf: float,
        kappa_over_lambda: float = 0.0,
        gamma_over_lambda: float = 0.0,
        lam: float = 1.0,
    ) -> "ModelSpec":
        pulse = design_pulses(PulseParams(epsilon, lambda_tf / lam, TWO_ATOM_SCALE))
        return cls(
            ModelKind.TWO_ATOM,
            lam=lam,
            kappa=kappa_over_lambda * lam,
            gamma_total=gamma_over_lambda * lam,
            pulse=pulse,
        )

    @classmethod
    def three_atom(
        cls,
        epsilon: float,
        lambda_tf: float,
        kappa_over_lambda: float = 0.0,
        gamma_over_lambda: float = 0.0,
        lam: float = 1.0,
    ) -> "ModelSpec":
        pulse = design_pulses(PulseParams(epsilon, lambda_tf / lam, THREE_ATOM_SCALE))
        return cls(
            ModelKind.THREE_ATOM,
            lam=lam,
            kappa=kappa_over_lambda * lam,
            gamma_total=gamma_over_lambda * lam,
            pulse=pulse,
        )

    @classmethod
    def zeno_baseline(cls, omega_z: float, lam: float = 1.0) -> "ModelSpec":
        return cls(ModelKind.ZENO_BASELINE, lam=lam, omega_z=omega_z)


def _two_atom_parts(lam: float):
    d = 6
    c1 = np.zeros((d, d), dtype=complex)
    c1[0, 1] = c1[1, 0] = 1.0  # laser on atom 1: f_g_0 <-> e_g_0
    c2 = np.zeros((d, d), dtype=complex)
    c2[3, 4] = c2[4, 3] = 1.0  # laser on atom 2: g_e_0 <-> g_f_0
    hc = np.zeros((d, d), dtype=complex)
    hc[1, 2] = hc[2, 1] = lam  # photon exchange with atom 1
    hc[2, 3] = hc[3, 2] = lam  # photon exchange with atom 2
    return c1, c2, hc


def _three_atom_parts(lam: float):
    d = 9
    c1 = np.zeros((d, d), dtype=complex)
    c1[0, 1] = c1[1, 0] = 1.0  # laser on atom 1
    c2 = np.zeros((d, d), dtype=complex)
    c2[5, 6] = c2[6, 5] = 1.0  # laser on atom 3
    hc = np.zeros((d, d), dtype=complex)
    for i in range(1, 5):  # excitation hops along the five-site chain
        hc[i, i + 1] = hc[i + 1, i] = lam
    return c1, c2, hc


def _baseline_parts():
    d = 3
    c1 = np.zeros((d, d), dtype=complex)
    c1[0, 1] = c1[1, 0] = 1.0 / SQRT2
    c2 = np.zeros((d, d), dtype=complex)
    c2[1, 2] = c2[2, 1] = 1.0 / SQRT2
    hc = np.zeros((d, d), dtype=complex)
    return c1, c2, hc


def hamiltonian_parts(model: ModelSpec):
    """(C1, C2, H_const) with H(t) = Omega1(t) C1 + Omega2(t) C2 + H_const."""
    if model.kind is ModelKind.TWO_ATOM:
        return _two_atom_parts(model.lam)
    if model.kind is ModelKind.THREE_ATOM:
        return _three_atom_parts(model.lam)
    return _baseline_parts()


def drive_values(model: ModelSpec, t) -> tuple:
    """The two Rabi frequencies at time t (constant for the baseline)."""
    if model.kind is ModelKind.ZENO_BASELINE:
        ts = np.asarray(t, dtype=float)
        o = np.full_like(ts, model.omega_z)
        if np.ndim(t) == 0:
            return float(o), float(o)
        return o, o
    return model.pulse.omega1(t), model.pulse.omega2(t)


def h_total_matrix(model: ModelSpec, t: float) -> np.ndarray:
    c1, c2, hc = hamiltonian_parts(model)
    o1, o2 = drive_values(model, t)
    return o1 * c1 + o2 * c2 + hc


def h_total(model: ModelSpec, t: float) -> Op:
    """Full interaction-picture Hamiltonian on the extended basis."""
    return Op(h_total_matrix(model, t), hermitian=True)


def h_subsystem_matrix(model: ModelSpec, t: float) -> np.ndarray:
    o1, o2 = drive_values(model, t)
    scale = _SCALE_BY_KIND.get(model.kind, SQRT2)
    return (1.0 / scale) * np.array(
        [[0.0, o1, 0.0], [o1, 0.0, o2], [0.0, o2, 0.0]], dtype=complex
    )


def h_subsystem(model: ModelSpec, t: float) -> Op:
    """3x3 bridge Hamiltonian (initial, zero-mode bridge, target)."""
    return Op(h_subsystem_matrix(model, t), hermitian=True)


_REWRITTEN_LABELS = {
    ModelKind.TWO_ATOM: ("f_g_0", "g_f_0", "asym_e", "sym_e", "g_g_1"),
    ModelKind.THREE_ATOM: (
        "f_gp_gm_0",
        "gp_gm_f_0",
        "chain_0",
        "asym_photon",
        "asym_edge",
    ),
}


def rewritten_labels(kind: ModelKind) -> tuple[str, ...]:
    return _REWRITTEN_LABELS[kind]


def rewritten_basis(model: ModelSpec) -> np.ndarray:
    """Rows are the five rotated basis vectors expressed in the full basis."""
    probes = intermediate_probes(model.kind)
    d = model.dim
    if model.kind is ModelKind.TWO_ATOM:
        rows = [
            np.eye(d, dtype=complex)[0],
            np.eye(d, dtype=complex)[4],
            probes["asym_e"].amp,
            probes["sym_e"].amp,
            np.eye(d, dtype=complex)[2],
        ]
    elif model.kind is ModelKind.THREE_ATOM:
        rows = [
            np.eye(d, dtype=complex)[0],
            np.eye(d, dtype=complex)[6],
            probes["chain_0"].amp,
            probes["asym_photon"].amp,
            probes["asym_edge"].amp,
        ]
    else:
        raise ValueError("the baseline model has no rewritten frame")
    return np.stack(rows)


def rewritten_hamiltonian(
    omega1: float, omega2: float, lam: float, kind: ModelKind = ModelKind.TWO_ATOM
) -> np.ndarray:
    """The 5x5 Hamiltonian in the rotated frame for given drive values."""
    h = np.zeros((5, 5), dtype=complex)
    if kind is ModelKind.TWO_ATOM:
        h[0, 2] = -omega1 / SQRT2
        h[1, 2] = omega2 / SQRT2
        h[0, 3] = omega1 / SQRT2
        h[1, 3] = omega2 / SQRT2
        h[4, 3] = SQRT2 * lam
    elif kind is ModelKind.THREE_ATOM:
        h[2, 0] = omega1 / SQRT3
        h[2, 1] = omega2 / SQRT3
        h[4, 0] = -omega1 / SQRT2
        h[4, 1] = omega2 / SQRT2
        h[4, 3] = lam
    else:
        raise ValueError("the baseline model has no rewritten frame")
    return h + h.conj().T


def h_rewritten(model: ModelSpec, t: float) -> Op:
    """Hamiltonian in the rotated intermediate frame at time t."""
    o1, o2 = drive_values(model, t)
    return Op(rewritten_hamiltonian(o1, o2, model.lam, model.kind), hermitian=True)


def atom_cavity_block(model: ModelSpec) -> Op:
    """Atom-cavity Hamiltonian restricted to the non-leak basis."""
    _, _, hc = hamiltonian_parts(model)
    keep = [i for i in range(model.dim) if i not in model.basis.leak_indices]
    return Op(hc[np.ix_(keep, keep)], hermitian=True)


@dataclass(frozen=True)
class ZenoGroup:
    """A (near-)degenerate eigenvalue and the indices of its eigenvectors."""

    eigenvalue: float
    indices: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ZenoDecomposition:
    """Eigenstructure of the strong coupling, grouped by eigenvalue.

    ``couplings[n, m, l]`` is the matrix element of the m-th unit-strength
    drive channel between eigenvector n and bare basis state l.
    """

    eigenvalues: np.ndarray
    eigenvectors: tuple[Ket, ...]
    groups: tuple[ZenoGroup, ...]
    couplings: np.ndarray | None


def zeno_partition(
    h_ac,
    channels: Sequence = (),
    group_tol: float | None = None,
) -> ZenoDecomposition:
    """Partition the coupling Hamiltonian into degenerate eigenspaces.

    ``group_tol`` defaults to 1e-9 times the spectral radius (floored at
    1e-9), matching a coupling constant of order one.
    """
    values, vectors = eig_hermitian(h_ac)
    if group_tol is None:
        group_tol = 1e-9 * max(1.0, float(np.abs(values).max(initial=0.0)))

    groups: list[ZenoGroup] = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[start] > group_tol:
            members = tuple(range(start, i))
            groups.append(
                ZenoGroup(float(values[start:i].mean()), members)
            )
            start = i

    couplings = None
    if channels:
        mats = [np.asarray(getattr(c, "entries", c), dtype=complex) for c in channels]
        couplings = np.empty((len(vectors), len(mats), len(values)), dtype=complex)
        for n, vec in enumerate(vectors):
            for m, cm in enumerate(mats):
                couplings[n, m, :] = vec.amp.conj() @ cm
    return ZenoDecomposition(values, tuple(vectors), tuple(groups), couplings)


def dark_state(model: ModelSpec, t: float) -> Ket:
    """Zero eigenvector of the rotated Hamiltonian, in the full basis."""
    o1, o2 = drive_values(model, t)
    if o1 == 0.0 and o2 == 0.0:
        raise DegenerateDarkStateError(
            "dark state undefined where both drives vanish"
        )
    amp = np.zeros(model.dim, dtype=complex)
    if model.kind is ModelKind.TWO_ATOM:
        amp[0] = o2
        amp[2] = -o1 * o2 / model.lam
        amp[4] = o1
    elif model.kind is ModelKind.THREE_ATOM:
        amp[0] = o2
        amp[2] = -o1 * o2 / model.lam
        amp[4] = o1 * o2 / model.lam
        amp[6] = -o1
    else:
        raise ValueError("the baseline model has no engineered dark state")
    return Ket(amp / np.linalg.norm(amp), normalized=True)


def gap_eigenstates(omega1: float, omega2: float, lam: float) -> tuple[Ket, Ket]:
    """Closed-form eigenvectors of the rotated 5x5 Hamiltonian at the
    smallest nonzero eigenvalue pair +/-|gap| (two-atom model).

    Components are in the rotated frame order (initial, target, asym_e,
    sym_e, photon). The returned pair is labeled by its eigenvalue sign.
    Equal drives degenerate the closed form; diagonalize numerically there.
    """
    d = diagnostics(omega1, omega2, lam)
    if d.drive_asymmetry == 0.0:
        raise SingularCouplingError(
            "closed form requires omega1 != omega2; use eig_hermitian instead"
        )
    vth = d.gap_scale
    c_initial = (omega1 / d.drive_asymmetry) * (
        vth * vth / 2.0 - (omega2 * omega2 + 2.0 * lam * lam)
    )
    c_target = -(omega2 / d.drive_asymmetry) * (
        vth * vth / 2.0 - (omega1 * omega1 + 2.0 * lam * lam)
    )
    c_asym = vth * (2.0 * lam * lam + d.gap_shift) / (2.0 * d.drive_asymmetry)
    c_sym = vth / (2.0 * lam)
    plus = np.array([c_initial, c_target, c_asym, c_sym, 1.0], dtype=complex)
    minus = np.array([c_initial, c_target, -c_asym, -c_sym, 1.0], dtype=complex)
    plus /= np.linalg.norm(plus)
    minus /= np.linalg.norm(minus)
    return Ket(plus, normalized=True), Ket(minus, normalized=True)


def zeno_baseline_state(omega_z: float, t: float) -> Ket:
    """Exact state of the constant-drive three-level system at time t.

    Components are (initial, bridge, target); the effective Rabi frequency
    for equal drives is omega_z itself.
    """
    if omega_z <= 0.0:
        raise ValueError(f"omega_z must be positive, got {omega_z}")
    chi_t = omega_z * t
    amp = np.array(
        [
            0.5 * (1.0 + math.cos(chi_t)),
            -1j * math.sin(chi_t) / SQRT2,
            0.5 * (math.cos(chi_t) - 1.0),
        ],
        dtype=complex,
    )
    return Ket(amp, normalized=True)


# (target, source, channel); channel "cavity" decays at kappa, "atom" at
# gamma/2 per emission line.
_JUMP_STRUCTURE = {
    ModelKind.TWO_ATOM: (
        (5, 2, "cavity"),  # photon loss: g_g_1 -> g_g_0
        (0, 1, "atom"),    # atom 1 decays e -> f, back into the chain
        (4, 3, "atom"),    # atom 2 decays e -> f
        (5, 1, "atom"),    # atom 1 decays e -> g, out of the chain
        (5, 3, "atom"),    # atom 2 decays e -> g
    ),
    ModelKind.THREE_ATOM: (
        (7, 2, "cavity"),  # + polarized photon loss
        (8, 4, "cavity"),  # - polarized photon loss
        (0, 1, "atom"),    # atom 1 decays e -> f
        (6, 5, "atom"),    # atom 3 decays e -> f
        (7, 1, "atom"),    # atom 1 decays e -> g+
        (8, 5, "atom"),    # atom 3 decays e -> g-
        (7, 3, "atom"),    # atom 2 decays e -> g+
        (8, 3, "atom"),    # atom 2 decays e -> g-
    ),
    ModelKind.ZENO_BASELINE: (),
}


def jump_structure(kind: ModelKind) -> tuple[tuple[int, int, str], ...]:
    """Jump-operator sparsity: (target, source, channel) per operator."""
    return _JUMP_STRUCTURE[kind]


def jump_entries(model: ModelSpec) -> tuple[tuple[int, int, float], ...]:
    """Jump operators as (target, source, amplitude) single-entry triples."""
    g2 = math.sqrt(model.gamma_total / 2.0)
    k = math.sqrt(model.kappa)
    return tuple(
        (i, j, k if channel == "cavity" else g2)
        for i, j, channel in jump_structure(model.kind)
    )


def lindblad_ops(model: ModelSpec) -> list[Op]:
    """Dissipation operators on the extended basis (empty for the baseline)."""
    ops = []
    for i, j, amp in jump_entries(model):
        m = np.zeros((model.dim, model.dim), dtype=complex)
        m[i, j] = amp
        ops.append(Op(m))
    return ops


def _probe(dim: int, pairs: dict[int, complex]) -> Ket:
    amp = np.zeros(dim, dtype=complex)
    for idx, val in pairs.items():
        amp[idx] = val
    return Ket(amp / np.linalg.norm(amp), normalized=True)


def intermediate_probes(kind: ModelKind) -> dict[str, Ket]:
    """Named superposition states whose populations the experiments track.

    Two-atom: symmetric/antisymmetric single-excitation combinations and the
    dressed modes that diagonalize the atom-cavity coupling. Three-atom: the
    five eigenmodes of the excitation chain (chain_0 at zero, chain_p1/m1 at
    +/-lambda, chain_p2/m2 at +/-sqrt(3) lambda) plus the antisymmetric
    photon and edge-excitation combinations.
    """
    if kind is ModelKind.TWO_ATOM:
        d = 6
        return {
            "asym_e": _probe(d, {1: -1.0, 3: 1.0}),
            "sym_e": _probe(d, {1: 1.0, 3: 1.0}),
            "dressed_up": _probe(d, {1: 1.0, 2: SQRT2, 3: 1.0}),
            "dressed_down": _probe(d, {1: 1.0, 2: -SQRT2, 3: 1.0}),
        }
    if kind is ModelKind.THREE_ATOM:
        d = 9
        return {
            "chain_0": _probe(d, {1: 1.0, 3: -1.0, 5: 1.0}),
            "chain_p1": _probe(d, {1: -1.0, 2: -1.0, 4: 1.0, 5: 1.0}),
            "chain_m1": _probe(d, {1: -1.0, 2: 1.0, 4: -1.0, 5: 1.0}),
            "chain_p2": _probe(d, {1: 1.0, 2: SQRT3, 3: 2.0, 4: SQRT3, 5: 1.0}),
            "chain_m2": _probe(d, {1: 1.0, 2: -SQRT3, 3: 2.0, 4: -SQRT3, 5: 1.0}),
            "asym_photon": _probe(d, {4: 1.0, 2: -1.0}),
            "asym_edge": _probe(d, {5: 1.0, 1: -1.0}),
        }
    raise ValueError("the baseline model defines no intermediate probes")


@dataclass(frozen=True)
class DiagnosticSet:
    """Derived scalars for a drive pair (omega1, omega2) at coupling lam.

    ``n2``/``n3`` are the dark-state normalizations of the two models;
    ``photon_ratio`` the instantaneous photon admixture of the two-atom dark
    state; ``coeff_ratio`` the asym/sym coefficient ratio in the gap
    eigenstates (may be inf); ``gap`` the smallest nonzero |eigenvalue| of
    the rotated Hamiltonian, with ``gap_shift``/``gap_scale`` its inner
    square roots and ``drive_asymmetry`` = lam*(omega1^2 - omega2^2).
    """

    n2: float
    n3: float
    photon_ratio: float
    coeff_ratio: float
    gap: float
    gap_shift: float
    gap_scale: float
    drive_asymmetry: float


def diagnostics(omega1: float, omega2: float, lam: float) -> DiagnosticSet:
    o1sq = omega1 * omega1
    o2sq = omega2 * omega2
    cross = omega1 * omega2 / lam
    n2 = math.sqrt(o1sq + o2sq + cross * cross)
    n3 = o1sq + o2sq + 2.0 * cross * cross
    shift = math.hypot(o1sq - o2sq, 2.0 * lam * lam)
    scale = math.sqrt(max(o1sq + o2sq + 2.0 * lam * lam - shift, 0.0))
    diff = o1sq - o2sq
    coeff = math.inf if diff == 0.0 else abs((2.0 * lam * lam + shift) / diff)
    return DiagnosticSet(
        n2=n2,
        n3=n3,
        photon_ratio=0.0 if n2 == 0.0 else abs(cross) / n2,
        coeff_ratio=coeff,
        gap=scale / SQRT2,
        gap_shift=shift,
        gap_scale=scale,
        drive_asymmetry=lam * diff,
    )
