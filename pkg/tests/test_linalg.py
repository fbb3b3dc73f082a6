import math

import numpy as np
import pytest

from zenosim.linalg import (
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

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return a + a.conj().T


class TestKet:
    def test_dim_and_norm(self):
        k = Ket([1.0, 1j])
        assert k.dim == 2
        assert k.norm() == pytest.approx(math.sqrt(2.0))

    def test_normalized_flag_enforced(self):
        Ket([1.0, 0.0], normalized=True)
        with pytest.raises(ValueError):
            Ket([1.0, 1.0], normalized=True)

    def test_amplitudes_frozen(self):
        k = Ket([1.0, 0.0])
        with pytest.raises(ValueError):
            k.amp[0] = 2.0

    def test_normalize(self):
        k = Ket([3.0, 4.0]).normalize()
        assert k.norm() == pytest.approx(1.0)
        with pytest.raises(ValueError):
            Ket([0.0, 0.0]).normalize()

    def test_overlap_conjugates_left(self):
        a = Ket([1j, 0.0])
        b = Ket([1.0, 0.0])
        assert a.overlap(b) == pytest.approx(-1j)


class TestOp:
    def test_hermitian_flag(self):
        Op(SX, hermitian=True)
        with pytest.raises(NonHermitianError) as err:
            Op(np.array([[0, 1], [0, 0]], dtype=complex), hermitian=True)
        assert err.value.deviation == pytest.approx(1.0)

    def test_must_be_square(self):
        with pytest.raises(ValueError):
            Op(np.zeros((2, 3)))


class TestDensityMatrix:
    def test_valid_pure_state(self):
        rho = DensityMatrix.from_ket(Ket([1.0, 0.0], normalized=True))
        assert rho.min_eigenvalue() >= -1e-12

    def test_trace_enforced(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.eye(2, dtype=complex))

    def test_hermiticity_enforced(self):
        bad = np.array([[0.5, 1e-3], [0.0, 0.5]], dtype=complex)
        with pytest.raises(NonHermitianError):
            DensityMatrix(bad)

    def test_min_eigenvalue_detects_negativity(self):
        rho = DensityMatrix(np.diag([1.1, -0.1]).astype(complex))
        assert rho.min_eigenvalue() == pytest.approx(-0.1)


class TestEigHermitian:
    def test_pauli_x(self):
        values, vectors = eig_hermitian(SX)
        assert values == pytest.approx([-1.0, 1.0])
        for lam, v in zip(values, vectors):
            assert np.linalg.norm(SX @ v.amp - lam * v.amp) < 1e-12

    def test_two_atom_coupling_block(self):
        block = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
        values, _ = eig_hermitian(block)
        assert values == pytest.approx([-math.sqrt(2), 0.0, math.sqrt(2)], abs=1e-12)

    def test_three_atom_coupling_block(self):
        chain = np.zeros((5, 5), dtype=complex)
        for i in range(4):
            chain[i, i + 1] = chain[i + 1, i] = 1.0
        values, _ = eig_hermitian(chain)
        expected = [-math.sqrt(3), -1.0, 0.0, 1.0, math.sqrt(3)]
        assert values == pytest.approx(expected, abs=1e-12)

    def test_rejects_non_hermitian_with_deviation(self):
        bad = np.array([[0, 1], [0.5, 0]], dtype=complex)
        with pytest.raises(NonHermitianError) as err:
            eig_hermitian(bad)
        assert err.value.deviation == pytest.approx(0.5)

    def test_random_hermitian_contracts(self):
        # residual, reconstruction, and orthonormality over seeded trials
        rng = np.random.default_rng(20240811)
        for trial in range(1000):
            dim = int(rng.integers(2, 10))
            a = random_hermitian(rng, dim)
            values, vectors = eig_hermitian(a)
            vmat = np.column_stack([v.amp for v in vectors])
            gram = vmat.conj().T @ vmat
            assert np.abs(gram - np.eye(dim)).max() < 1e-10
            recon = (vmat * values) @ vmat.conj().T
            scale = max(1.0, np.abs(a).max())
            assert np.abs(recon - a).max() / scale < 1e-10
            for lam, v in zip(values, vectors):
                assert np.linalg.norm(a @ v.amp - lam * v.amp) / scale < 1e-10
            assert np.all(np.diff(values) >= -1e-12)

    def test_phase_convention_deterministic(self):
        rng = np.random.default_rng(7)
        a = random_hermitian(rng, 5)
        _, first = eig_hermitian(a)
        _, second = eig_hermitian(a.copy())
        for u, v in zip(first, second):
            assert np.array_equal(u.amp, v.amp)
            k = int(np.argmax(np.abs(u.amp)))
            assert u.amp[k].imag == 0.0
            assert u.amp[k].real > 0.0

    def test_accepts_op_wrapper(self):
        values, _ = eig_hermitian(Op(SZ, hermitian=True))
        assert values == pytest.approx([-1.0, 1.0])


class TestOperations:
    def test_expectation_identity(self):
        psi = Ket([1 / math.sqrt(2), 1j / math.sqrt(2)], normalized=True)
        assert expectation(Op.identity(2), psi) == pytest.approx(1.0)

    def test_expectation_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            expectation(Op.identity(3), Ket([1.0, 0.0]))

    def test_commutator_with_self_vanishes(self):
        rng = np.random.default_rng(11)
        a = Op(random_hermitian(rng, 4))
        assert np.abs(commutator(a, a).entries).max() == 0.0

    def test_pauli_commutator(self):
        c = commutator(Op(SX), Op(SY))
        assert np.abs(c.entries - 2j * SZ).max() < 1e-15

    def test_dagger_involution_exact(self):
        rng = np.random.default_rng(13)
        m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        a = Op(m)
        assert np.array_equal(dagger(dagger(a)).entries, a.entries)

    def test_matvec_and_outer(self):
        k = matvec(Op(SX), Ket([1.0, 0.0]))
        assert k.amp == pytest.approx([0.0, 1.0])
        p = outer(Ket([1.0, 0.0]), Ket([0.0, 1.0]))
        assert p.entries[0, 1] == pytest.approx(1.0)
        assert np.abs(p.entries).sum() == pytest.approx(1.0)

    def test_norm(self):
        assert norm(Ket([3.0, 4.0])) == pytest.approx(5.0)
