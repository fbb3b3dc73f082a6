"""Invariant-engineered fast population transfer in cavity QED.

Small-matrix linear algebra (`linalg`), pulse inverse engineering
(`pulses`), the physical models (`models`), closed/open time integration
(`dynamics`), and deterministic experiment presets with CSV output
(`experiments`). The `zenosim` console script fronts it all.
"""

from .dynamics import (
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    fidelity,
    integrate_lindblad,
    integrate_schrodinger,
    population,
)
from .experiments import (
    SCENARIO_IDS,
    Scenario,
    cesium_check,
    optimal_epsilon,
    run_scenario,
    scenario,
    sweep_fidelity,
    zeno_compare,
)
from .linalg import (
    DensityMatrix,
    DimensionMismatchError,
    Ket,
    NonHermitianError,
    Op,
    commutator,
    dagger,
    eig_hermitian,
    expectation,
    matvec,
    norm,
    outer,
)
from .models import (
    BasisCatalog,
    ModelKind,
    ModelSpec,
    dark_state,
    gap_eigenstates,
    h_rewritten,
    h_subsystem,
    h_total,
    intermediate_probes,
    lindblad_ops,
    zeno_baseline_state,
    zeno_partition,
)
from .pulses import (
    PulseParams,
    PulseSchedule,
    adiabaticity_ratio,
    asym_to_sym_ratio,
    design_pulses,
    energy_gap,
    invariant_eigenstates,
    invariant_matrix,
    lr_phase,
    peak_photon_ratio,
)

__version__ = "0.1.0"
