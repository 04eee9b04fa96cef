"""Dense linear algebra for the 2 x 3 product space.

Basis ordering used everywhere in the package is qubit-major:
|1/2,1>, |1/2,0>, |1/2,-1>, |-1/2,1>, |-1/2,0>, |-1/2,-1>.
"""
from typing import NamedTuple

import numpy as np

DIM_A = 2
DIM_B = 3
HERMITIAN_TOL = 1e-10


class NotHermitianError(ValueError):
    pass


class EigResult(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def hermiticity_residual(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def _check_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m), initial=0.0)))
    res = hermiticity_residual(m)
    if res > tol * scale:
        raise NotHermitianError(f"Hermiticity residual {res:.3e} exceeds tolerance")
    return 0.5 * (m + m.conj().T)


def hermitian_eig(m, tol=HERMITIAN_TOL) -> EigResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises NotHermitianError if ``m`` is not Hermitian to within ``tol``
    (relative to its largest entry).
    """
    h = _check_hermitian(m, tol)
    w, v = np.linalg.eigh(h)
    return EigResult(w, v)


def matrix_exp_hermitian(m, tol=HERMITIAN_TOL) -> np.ndarray:
    w, v = hermitian_eig(m, tol)
    return (v * np.exp(w)) @ v.conj().T


def partial_transpose_first(rho) -> np.ndarray:
    """Transpose the qubit index of a 6x6 operator."""
    rho = np.asarray(rho)
    if rho.shape != (DIM_A * DIM_B, DIM_A * DIM_B):
        raise ValueError(f"expected a 6x6 matrix, got shape {rho.shape}")
    t = rho.reshape(DIM_A, DIM_B, DIM_A, DIM_B)
    return t.transpose(2, 1, 0, 3).reshape(DIM_A * DIM_B, DIM_A * DIM_B)


def partial_trace(rho, which: str) -> np.ndarray:
    """Trace out subsystem ``which``.

    ``which="b"`` removes the spin-1 and returns the 2x2 qubit marginal;
    ``which="a"`` removes the spin-1/2 and returns the 3x3 qutrit marginal.
    """
    rho = np.asarray(rho)
    if rho.shape != (DIM_A * DIM_B, DIM_A * DIM_B):
        raise ValueError(f"expected a 6x6 matrix, got shape {rho.shape}")
    t = rho.reshape(DIM_A, DIM_B, DIM_A, DIM_B)
    if which == "b":
        return np.einsum("ijkj->ik", t)
    if which == "a":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"which must be 'a' or 'b', got {which!r}")


def hs_norm_sq(a) -> float:
    """Squared Hilbert-Schmidt norm Tr(A^dag A)."""
    a = np.asarray(a)
    return float(np.sum(np.abs(a) ** 2))
