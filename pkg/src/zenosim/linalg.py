"""Dense complex linear algebra for small Hilbert spaces (dim <= 16).

Values are immutable after construction (the wrapped arrays are frozen), so
they can be shared between concurrent workers without copying or locking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Ket",
    "Op",
    "DensityMatrix",
    "DimensionMismatchError",
    "NonHermitianError",
    "eig_hermitian",
    "expectation",
    "commutator",
    "matvec",
    "dagger",
    "outer",
    "norm",
]

NORM_TOL = 1e-8
HERMITIAN_TOL = 1e-12
DENSITY_HERMITIAN_TOL = 1e-10
DENSITY_TRACE_TOL = 1e-8
DENSITY_PSD_TOL = 1e-7


class DimensionMismatchError(ValueError):
    """Operands live on Hilbert spaces of different dimension."""


class NonHermitianError(ValueError):
    """A Hermitian matrix was required; carries the measured deviation."""

    def __init__(self, deviation: float):
        self.deviation = float(deviation)
        super().__init__(
            "matrix is not Hermitian within tolerance: "
            f"max |A - A^dagger| = {self.deviation:.3e}"
        )


def _frozen_complex(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatchError(f"dimension mismatch: {a} vs {b}")


def _hermitian_deviation(m: np.ndarray) -> float:
    return float(np.abs(m - m.conj().T).max())


@dataclass(frozen=True, eq=False)
class Ket:
    """Complex state vector over an enumerated basis.

    ``normalized=True`` asserts the 2-norm is 1 within 1e-8 at construction.
    """

    amp: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        arr = _frozen_complex(self.amp, 1)
        if arr.size == 0:
            raise ValueError("state vector needs at least one amplitude")
        object.__setattr__(self, "amp", arr)
        if self.normalized:
            dev = abs(np.linalg.norm(arr) - 1.0)
            if dev > NORM_TOL:
                raise ValueError(f"state flagged normalized is off by {dev:.3e}")

    @property
    def dim(self) -> int:
        return self.amp.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def normalize(self) -> "Ket":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return Ket(self.amp / n, normalized=True)

    def overlap(self, other: "Ket") -> complex:
        """Inner product <self|other>."""
        _check_dims(self.dim, other.dim)
        return complex(np.vdot(self.amp, other.amp))

    @classmethod
    def basis_state(cls, dim: int, index: int) -> "Ket":
        amp = np.zeros(dim, dtype=complex)
        amp[index] = 1.0
        return cls(amp, normalized=True)


@dataclass(frozen=True, eq=False)
class Op:
    """Dense operator. ``hermitian=True`` asserts A == A^dagger within 1e-12."""

    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        arr = _frozen_complex(self.entries, 2)
        if arr.shape[0] != arr.shape[1]:
            raise ValueError(f"operator must be square, got shape {arr.shape}")
        object.__setattr__(self, "entries", arr)
        if self.hermitian:
            dev = _hermitian_deviation(arr)
            if dev > HERMITIAN_TOL:
                raise NonHermitianError(dev)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def hermitian_deviation(self) -> float:
        return _hermitian_deviation(self.entries)

    @classmethod
    def identity(cls, dim: int) -> "Op":
        return cls(np.eye(dim, dtype=complex), hermitian=True)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Density operator: Hermitian within 1e-10 and unit trace within 1e-8.

    Positivity is not re-verified on every construction (it needs an
    eigensolve); call :meth:`min_eigenvalue` where the -1e-7 floor matters.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = _frozen_complex(self.entries, 2)
        if arr.shape[0] != arr.shape[1]:
            raise ValueError(f"density matrix must be square, got {arr.shape}")
        dev = _hermitian_deviation(arr)
        if dev > DENSITY_HERMITIAN_TOL:
            raise NonHermitianError(dev)
        tr = complex(np.trace(arr))
        if abs(tr - 1.0) > DENSITY_TRACE_TOL:
            raise ValueError(f"trace must be 1 within {DENSITY_TRACE_TOL}, got {tr}")
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def min_eigenvalue(self) -> float:
        vals, _ = eig_hermitian(0.5 * (self.entries + self.entries.conj().T))
        return float(vals[0])

    @classmethod
    def from_ket(cls, psi: Ket) -> "DensityMatrix":
        return cls(np.outer(psi.amp, psi.amp.conj()))


def _as_matrix(a) -> np.ndarray:
    if isinstance(a, Op):
        return a.entries
    if isinstance(a, DensityMatrix):
        return a.entries
    return np.asarray(a, dtype=complex)


def _as_vector(psi) -> np.ndarray:
    if isinstance(psi, Ket):
        return psi.amp
    return np.asarray(psi, dtype=complex)


def _off_diagonal_frobenius(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def eig_hermitian(a, tol: float = 1e-14, max_sweeps: int = 100):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||A||_F)``. Eigenvalues are returned ascending; each
    eigenvector is phase-fixed so its largest-magnitude component is real
    and positive, which makes the output deterministic.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues a float array
    and eigenvectors a list of orthonormal :class:`Ket`.
    """
    m = _as_matrix(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = _hermitian_deviation(m)
    if dev > HERMITIAN_TOL:
        raise NonHermitianError(dev)

    n = m.shape[0]
    A = 0.5 * (m + m.conj().T)  # symmetrize away representation roundoff
    V = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(A)))
    rotation_floor = threshold / (4.0 * n * n)

    converged = n == 1
    for _ in range(max_sweeps):
        if _off_diagonal_frobenius(A) <= threshold:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= rotation_floor:
                    continue
                phase = apq / mag
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # unitary plane rotation G: G[p,p]=c, G[p,q]=s,
                # G[q,p]=-s*conj(phase), G[q,q]=c*conj(phase)
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * np.conj(phase) * col_q
                A[:, q] = s * col_p + c * np.conj(phase) * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * phase * row_q
                A[q, :] = s * row_p + c * phase * row_q
                A[p, q] = 0.0
                A[q, p] = 0.0
                col_p = V[:, p].copy()
                col_q = V[:, q].copy()
                V[:, p] = c * col_p - s * np.conj(phase) * col_q
                V[:, q] = s * col_p + c * np.conj(phase) * col_q
    if not converged and _off_diagonal_frobenius(A) > threshold:
        raise RuntimeError(
            f"Jacobi sweep did not converge within {max_sweeps} sweeps"
        )

    values = np.diag(A).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = []
    for idx in order:
        v = V[:, idx].copy()
        k = int(np.argmax(np.abs(v)))
        pivot = v[k]
        if abs(pivot) > 0.0:
            v = v * (np.conj(pivot) / abs(pivot))
            v[k] = abs(pivot)  # exactly real after the phase twist
        vectors.append(Ket(v, normalized=True))
    return values, vectors


def expectation(a, psi) -> complex:
    """<psi| A |psi>."""
    m = _as_matrix(a)
    v = _as_vector(psi)
    _check_dims(m.shape[0], v.size)
    return complex(np.vdot(v, m @ v))


def commutator(a, b) -> Op:
    """[A, B] = AB - BA."""
    ma = _as_matrix(a)
    mb = _as_matrix(b)
    _check_dims(ma.shape[0], mb.shape[0])
    return Op(ma @ mb - mb @ ma)


def matvec(a, psi) -> Ket:
    m = _as_matrix(a)
    v = _as_vector(psi)
    _check_dims(m.shape[0], v.size)
    return Ket(m @ v)


def dagger(a) -> Op:
    m = _as_matrix(a)
    herm = isinstance(a, Op) and a.hermitian
    return Op(m.conj().T, hermitian=herm)


def outer(a: Ket, b: Ket) -> Op:
    """|a><b|."""
    _check_dims(a.dim, b.dim)
    return Op(np.outer(a.amp, b.amp.conj()))


def norm(psi) -> float:
    return float(np.linalg.norm(_as_vector(psi)))
