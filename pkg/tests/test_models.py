import math

import numpy as np
import pytest

from zenosim.linalg import Ket, eig_hermitian
from zenosim.models import (
    DegenerateDarkStateError,
    ModelKind,
    ModelSpec,
    SingularCouplingError,
    atom_cavity_block,
    dark_state,
    diagnostics,
    gap_eigenstates,
    h_rewritten,
    h_subsystem,
    h_total,
    hamiltonian_parts,
    intermediate_probes,
    jump_entries,
    lindblad_ops,
    rewritten_basis,
    rewritten_hamiltonian,
    zeno_baseline_state,
    zeno_partition,
)
from zenosim.pulses import PulseParams, asym_to_sym_ratio, peak_photon_ratio

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

TWO = ModelSpec.two_atom(0.2636, 10.0)
THREE = ModelSpec.three_atom(0.2596, 9.5)


class TestModelSpec:
    def test_basis_shapes(self):
        assert TWO.dim == 6 and TWO.basis.leak_indices == (5,)
        assert THREE.dim == 9 and THREE.basis.leak_indices == (7, 8)
        base = ModelSpec.zeno_baseline(0.1)
        assert base.dim == 3 and base.basis.leak_indices == ()

    def test_labels_describe_states(self):
        assert TWO.basis.labels[0] == "f_g_0"
        assert TWO.basis.labels[TWO.target_index] == "g_f_0"
        assert THREE.basis.labels[THREE.target_index] == "gp_gm_f_0"

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            ModelSpec.two_atom(0.25, 10.0, kappa_over_lambda=-0.1)
        with pytest.raises(ValueError):
            ModelSpec(ModelKind.TWO_ATOM)  # missing pulse
        with pytest.raises(ValueError):
            ModelSpec(ModelKind.ZENO_BASELINE, omega_z=0.0)

    def test_scale_must_match_kind(self):
        from zenosim.pulses import design_pulses

        pulse = design_pulses(PulseParams(0.25, 10.0))  # two-atom scale
        with pytest.raises(ValueError):
            ModelSpec(ModelKind.THREE_ATOM, pulse=pulse)


class TestHamiltonians:
    def test_coupling_only_when_drive_off(self):
        h = h_total(TWO, -1.0).entries  # outside the pulse window
        nonzero = {(i, j) for i, j in zip(*np.nonzero(h))}
        assert nonzero == {(1, 2), (2, 1), (2, 3), (3, 2)}

    def test_coupling_block_spectrum(self):
        h = h_total(TWO, -1.0).entries
        values, _ = eig_hermitian(h[1:4, 1:4])
        assert values == pytest.approx([-SQRT2, 0.0, SQRT2], abs=1e-12)

    def test_hermitian_at_random_times(self):
        rng = np.random.default_rng(99)
        for model in (TWO, THREE, ModelSpec.zeno_baseline(0.1)):
            horizon = model.t_f
            for t in rng.uniform(-1.0, horizon + 1.0, size=100):
                assert h_total(model, float(t)).hermitian_deviation() <= 1e-14

    def test_leak_rows_are_dark(self):
        for model in (TWO, THREE):
            h = h_total(model, 0.4 * model.t_f).entries
            for leak in model.basis.leak_indices:
                assert np.abs(h[leak, :]).max() == 0.0
                assert np.abs(h[:, leak]).max() == 0.0

    def test_subsystem_zero_drive(self):
        assert np.abs(h_subsystem(TWO, -1.0).entries).max() == 0.0

    def test_subsystem_spectrum_and_dark_vector(self):
        t = 3.7
        o1 = TWO.pulse.omega1(t)
        o2 = TWO.pulse.omega2(t)
        chi = math.hypot(o1, o2)
        values, _ = eig_hermitian(h_subsystem(TWO, t))
        assert values == pytest.approx([-chi / SQRT2, 0.0, chi / SQRT2], abs=1e-12)
        theta = math.atan2(o1, o2)
        dark = np.array([math.cos(theta), 0.0, -math.sin(theta)])
        assert np.linalg.norm(h_subsystem(TWO, t).entries @ dark) < 1e-12


class TestZenoPartition:
    def test_two_atom_groups(self):
        block = atom_cavity_block(TWO)
        part = zeno_partition(block)
        assert [g.eigenvalue for g in part.groups] == pytest.approx(
            [-SQRT2, 0.0, SQRT2], abs=1e-9
        )
        assert [len(g.indices) for g in part.groups] == [1, 3, 1]

    def test_three_atom_groups(self):
        part = zeno_partition(atom_cavity_block(THREE))
        assert [g.eigenvalue for g in part.groups] == pytest.approx(
            [-SQRT3, -1.0, 0.0, 1.0, SQRT3], abs=1e-9
        )
        assert [len(g.indices) for g in part.groups] == [1, 1, 3, 1, 1]

    def test_zero_group_contains_chain_ends_and_bridge(self):
        part = zeno_partition(atom_cavity_block(TWO))
        zero = next(g for g in part.groups if abs(g.eigenvalue) < 1e-9)
        basis = np.column_stack([part.eigenvectors[i].amp for i in zero.indices])
        projector = basis @ basis.conj().T
        bridge = np.zeros(5, dtype=complex)
        bridge[1] = -1.0 / SQRT2
        bridge[3] = 1.0 / SQRT2
        for vec in (np.eye(5)[0], np.eye(5)[4], bridge):
            assert np.linalg.norm(projector @ vec - vec) < 1e-9

    def test_projectors_resolve_identity(self):
        part = zeno_partition(atom_cavity_block(THREE))
        total = sum(
            np.outer(v.amp, v.amp.conj()) for v in part.eigenvectors
        )
        assert np.abs(total - np.eye(7)).max() < 1e-10
        assert sum(len(g.indices) for g in part.groups) == 7

    def test_drive_couplings(self):
        c1, c2, _ = hamiltonian_parts(TWO)
        channels = [c1[:5, :5], c2[:5, :5]]
        part = zeno_partition(atom_cavity_block(TWO), channels=channels)
        assert part.couplings.shape == (5, 2, 5)
        # driving the initial state reaches the zero group with weight 1/2
        # and each dressed mode with weight 1/4
        weights = {}
        for group in part.groups:
            w = sum(abs(part.couplings[n, 0, 0]) ** 2 for n in group.indices)
            weights[round(group.eigenvalue, 6)] = w
        assert weights[0.0] == pytest.approx(0.5, abs=1e-12)
        assert weights[round(SQRT2, 6)] == pytest.approx(0.25, abs=1e-12)
        assert weights[round(-SQRT2, 6)] == pytest.approx(0.25, abs=1e-12)


class TestRewrittenFrame:
    @pytest.mark.parametrize("model", [TWO, THREE], ids=["two-atom", "three-atom"])
    def test_matches_compression_of_full_hamiltonian(self, model):
        basis = rewritten_basis(model)
        for t in (0.0, 0.21 * model.t_f, 0.5 * model.t_f, model.t_f):
            full = h_total(model, t).entries
            compressed = basis.conj() @ full @ basis.T
            assert np.abs(compressed - h_rewritten(model, t).entries).max() < 1e-12

    def test_two_atom_spectrum_matches_active_block(self):
        for t in (1.0, 5.0, 8.5):
            full_vals, _ = eig_hermitian(h_total(TWO, t).entries[:5, :5])
            re_vals, _ = eig_hermitian(h_rewritten(TWO, t))
            assert np.abs(full_vals - re_vals).max() < 1e-9

    def test_zero_drive_structure(self):
        h = h_rewritten(TWO, -1.0).entries
        nonzero = {(i, j) for i, j in zip(*np.nonzero(h))}
        assert nonzero == {(3, 4), (4, 3)}
        assert h[4, 3] == pytest.approx(SQRT2 * TWO.lam)


class TestDarkState:
    def test_endpoints(self):
        start = dark_state(TWO, 0.0)
        assert abs(abs(start.amp[0]) - 1.0) < 1e-12
        end = dark_state(TWO, TWO.t_f)
        assert abs(abs(end.amp[4]) - 1.0) < 1e-12
        end3 = dark_state(THREE, THREE.t_f)
        assert abs(abs(end3.amp[6]) - 1.0) < 1e-12

    @pytest.mark.parametrize("model", [TWO, THREE], ids=["two-atom", "three-atom"])
    def test_annihilated_in_rewritten_frame(self, model):
        basis = rewritten_basis(model)
        for frac in np.linspace(0.02, 0.98, 25):
            t = frac * model.t_f
            coords = basis.conj() @ dark_state(model, t).amp
            assert np.linalg.norm(
                rewritten_hamiltonian(
                    *_drives(model, t), model.lam, model.kind
                )
                @ coords
            ) <= 1e-10

    def test_two_atom_annihilated_by_full_hamiltonian(self):
        for t in (2.0, 5.0, 9.0):
            residual = h_total(TWO, t).entries @ dark_state(TWO, t).amp
            assert np.linalg.norm(residual) <= 1e-10

    def test_midpoint_photon_weight_matches_ratio(self):
        t_mid = TWO.t_f / 2.0
        weight = abs(dark_state(TWO, t_mid).amp[2])
        expected = peak_photon_ratio(PulseParams(0.2636, 10.0))
        assert weight == pytest.approx(expected, abs=1e-10)

    def test_degenerate_when_drives_vanish(self):
        with pytest.raises(DegenerateDarkStateError):
            dark_state(TWO, -3.0)


def _drives(model, t):
    return model.pulse.omega1(t), model.pulse.omega2(t)


class TestGapEigenstates:
    def test_eigen_residuals_against_jacobi(self):
        rng = np.random.default_rng(2024)
        count = 0
        while count < 50:
            o1, o2, lam = rng.uniform(0.1, 2.0, size=3)
            if abs(o1 - o2) < 1e-3:
                continue
            count += 1
            h = rewritten_hamiltonian(o1, o2, lam, ModelKind.TWO_ATOM)
            gap_values, _ = eig_hermitian(h)
            plus, minus = gap_eigenstates(o1, o2, lam)
            d = diagnostics(o1, o2, lam)
            assert np.linalg.norm(h @ plus.amp - d.gap * plus.amp) <= 1e-8
            assert np.linalg.norm(h @ minus.amp + d.gap * minus.amp) <= 1e-8
            # both eigenvalues appear in the numeric spectrum
            assert np.abs(gap_values - d.gap).min() < 1e-10
            assert np.abs(gap_values + d.gap).min() < 1e-10

    def test_pair_orthogonal(self):
        plus, minus = gap_eigenstates(0.9, 0.4, 1.1)
        assert abs(plus.overlap(minus)) <= 1e-10

    def test_component_ratio_matches_closed_form(self):
        zeta, beta, lam = 1.1, 0.3, 1.0
        o1 = zeta * lam * math.sin(beta)
        o2 = zeta * lam * math.cos(beta)
        plus, _ = gap_eigenstates(o1, o2, lam)
        ratio = abs(plus.amp[2]) / abs(plus.amp[3])
        assert ratio == pytest.approx(asym_to_sym_ratio(zeta, beta), abs=1e-8)

    def test_boundary_amplitude_ratio(self):
        # drive amplitude sqrt(2): the asym/sym weight ratio is 1 + sqrt(2)
        plus, _ = gap_eigenstates(0.0, math.sqrt(2.0), 1.0)
        ratio = abs(plus.amp[2]) / abs(plus.amp[3])
        assert ratio == pytest.approx(1.0 + math.sqrt(2.0), abs=1e-10)

    def test_equal_drives_rejected(self):
        with pytest.raises(SingularCouplingError):
            gap_eigenstates(0.5, 0.5, 1.0)


class TestBaseline:
    def test_initial_state(self):
        assert zeno_baseline_state(0.1, 0.0).amp == pytest.approx([1.0, 0.0, 0.0])

    def test_full_transfer_at_pi_over_chi(self):
        t_f = math.pi / 0.1
        final = zeno_baseline_state(0.1, t_f)
        assert abs(final.amp[2]) ** 2 == pytest.approx(1.0, abs=1e-10)

    def test_half_population_on_bridge_at_midpoint(self):
        t_f = math.pi / 0.1
        mid = zeno_baseline_state(0.1, t_f / 2.0)
        assert abs(mid.amp[1]) ** 2 == pytest.approx(0.5, abs=1e-10)

    def test_requires_positive_drive(self):
        with pytest.raises(ValueError):
            zeno_baseline_state(0.0, 1.0)


class TestLindbladOps:
    def test_two_atom_count_and_targets(self):
        m = ModelSpec.two_atom(0.2636, 10.0, 0.04, 0.08)
        ops = lindblad_ops(m)
        assert len(ops) == 5
        photon_loss = ops[0].entries
        assert photon_loss[5, 2] == pytest.approx(math.sqrt(0.04))
        assert np.abs(photon_loss).sum() == pytest.approx(math.sqrt(0.04))
        into_chain = ops[1].entries
        assert into_chain[0, 1] == pytest.approx(math.sqrt(0.04))  # gamma/2

    def test_three_atom_structure(self):
        m = ModelSpec.three_atom(0.2596, 9.5, 0.05, 0.05)
        entries = jump_entries(m)
        assert len(entries) == 8
        targets = {(i, j) for i, j, _ in entries}
        assert (7, 2) in targets and (8, 4) in targets  # photon losses
        assert (0, 1) in targets and (6, 5) in targets  # decays into the chain
        assert (7, 3) in targets and (8, 3) in targets  # middle atom decays out

    def test_zero_rates_give_zero_operators(self):
        for op in lindblad_ops(TWO):
            assert np.abs(op.entries).max() == 0.0

    def test_baseline_has_no_jumps(self):
        assert lindblad_ops(ModelSpec.zeno_baseline(0.1)) == []

    def test_total_decay_is_diagonal(self):
        m = ModelSpec.three_atom(0.2596, 9.5, 0.03, 0.07)
        total = sum(
            op.entries.conj().T @ op.entries for op in lindblad_ops(m)
        )
        off = total - np.diag(np.diag(total))
        assert np.abs(off).max() == 0.0


class TestProbes:
    def test_two_atom_probes_normalized(self):
        probes = intermediate_probes(ModelKind.TWO_ATOM)
        assert set(probes) == {"asym_e", "sym_e", "dressed_up", "dressed_down"}
        for ket in probes.values():
            assert ket.norm() == pytest.approx(1.0)

    def test_chain_modes_diagonalize_coupling(self):
        probes = intermediate_probes(ModelKind.THREE_ATOM)
        _, _, hc = hamiltonian_parts(THREE)
        expected = {
            "chain_0": 0.0,
            "chain_p1": 1.0,
            "chain_m1": -1.0,
            "chain_p2": SQRT3,
            "chain_m2": -SQRT3,
        }
        for name, value in expected.items():
            v = probes[name].amp
            assert np.linalg.norm(hc @ v - value * v) < 1e-12

    def test_asym_probes_orthogonal_to_chain_zero(self):
        probes = intermediate_probes(ModelKind.THREE_ATOM)
        for name in ("asym_photon", "asym_edge"):
            assert abs(probes[name].overlap(probes["chain_0"])) < 1e-12


class TestDiagnostics:
    def test_matches_component_formulas(self):
        o1, o2, lam = 0.8, 0.3, 1.2
        d = diagnostics(o1, o2, lam)
        assert d.n2 == pytest.approx(
            math.sqrt(o1**2 + o2**2 + (o1 * o2 / lam) ** 2)
        )
        assert d.n3 == pytest.approx(o1**2 + o2**2 + 2 * (o1 * o2 / lam) ** 2)
        assert d.gap_shift == pytest.approx(
            math.sqrt((o1**2 - o2**2) ** 2 + 4 * lam**4)
        )
        assert d.gap == pytest.approx(d.gap_scale / SQRT2)
        assert d.drive_asymmetry == pytest.approx(lam * (o1**2 - o2**2))
        assert d.photon_ratio == pytest.approx((o1 * o2 / lam) / d.n2)

    def test_equal_drives_have_infinite_coefficient_ratio(self):
        assert diagnostics(0.5, 0.5, 1.0).coeff_ratio == math.inf
