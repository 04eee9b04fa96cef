"""Negativity, measurement-induced nonlocality and l1 coherence on 2 x 3 states."""
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .linalg import hermitian_eig, hs_norm_sq, kron, partial_transpose_first

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def _gell_mann():
    mats = []
    for j in range(3):
        for k in range(j + 1, 3):
            sym = np.zeros((3, 3), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            asym = np.zeros((3, 3), dtype=complex)
            asym[j, k], asym[k, j] = -1j, 1j
            mats += [sym, asym]
    mats.append(np.diag([1.0, -1.0, 0.0]).astype(complex))
    mats.append(np.diag([1.0, 1.0, -2.0]).astype(complex) / math.sqrt(3.0))
    return np.array(mats)


# normalised so that Tr(L_a L_b) = 2 delta_ab
GELL_MANN = _gell_mann()

X_TOL = 1e-9
NEG_CLAMP = 1e-12
SPARSITY_TOL = 1e-10

# entries allowed to be non-zero in the thermal-state layout (0-based)
_THERMAL_PATTERN = np.eye(6, dtype=bool)
_THERMAL_PATTERN[1, 3] = _THERMAL_PATTERN[3, 1] = True
_THERMAL_PATTERN[2, 4] = _THERMAL_PATTERN[4, 2] = True


class MalformedStateError(ValueError):
    pass


@dataclass(frozen=True)
class CorrelationData:
    x: np.ndarray  # qubit Bloch vector, shape (3,)
    tmat: np.ndarray  # correlation matrix, shape (3, 8)


@dataclass(frozen=True)
class MeasureResult:
    negativity: float
    min_value: float
    coherence_l1: float


def _negativity_from_eigs(eigs) -> float:
    eigs = np.asarray(eigs, dtype=float)
    eigs = np.where((eigs < 0) & (eigs > -NEG_CLAMP), 0.0, eigs)
    return float(0.5 * np.sum(np.abs(eigs) - eigs))


def negativity_generic(rho) -> float:
    """Sum of |negative eigenvalues| of the qubit partial transpose."""
    eigs = hermitian_eig(partial_transpose_first(rho)).eigenvalues
    return _negativity_from_eigs(eigs)


def pt_eigenvalues_closed(rho) -> np.ndarray:
    """Analytic eigenvalues of the partial transpose of a thermal-layout state.

    The partial transpose splits into two 1x1 blocks (rho_33, rho_44) and two
    2x2 blocks coupling (rho_22, rho_66) via rho_35 and (rho_11, rho_55) via
    rho_24 (1-based labels).
    """
    rho = np.asarray(rho)
    off = np.where(_THERMAL_PATTERN, 0.0, np.abs(rho))
    if rho.shape != (6, 6) or np.max(off) > SPARSITY_TOL:
        raise MalformedStateError("state does not have the thermal-state sparsity pattern")
    d = rho.diagonal().real
    r11, r22, r33, r44, r55, r66 = d
    c24 = abs(rho[1, 3]) ** 2
    c35 = abs(rho[2, 4]) ** 2

    def block(p, q, c):
        upper = 0.5 * (p + q) + 0.5 * math.sqrt((p - q) ** 2 + 4.0 * c)
        # product form avoids cancellation in the small root
        lower = (p * q - c) / upper if upper > 0 else 0.0
        return upper, lower

    l3, l4 = block(r22, r66, c35)
    l5, l6 = block(r11, r55, c24)
    return np.array([r33, r44, l3, l4, l5, l6])


def negativity_closed(rho) -> float:
    return _negativity_from_eigs(pt_eigenvalues_closed(rho))


def correlation_data(rho) -> CorrelationData:
    rho = np.asarray(rho)
    x = np.array([np.trace(rho @ kron(s, np.eye(3))).real for s in PAULI])
    tmat = np.array([
        [0.5 * np.trace(rho @ kron(s, lam)).real for lam in GELL_MANN]
        for s in PAULI
    ])
    return CorrelationData(x, tmat)


def min_closed(rho, x_tol: float = X_TOL) -> float:
    """Hilbert-Schmidt MIN from the correlation matrix.

    With a polarised qubit the measurement basis is pinned to the Bloch
    vector; otherwise the least eigenvalue of T T^t is removed.
    """
    cd = correlation_data(rho)
    tt = cd.tmat @ cd.tmat.T
    norm = float(np.linalg.norm(cd.x))
    if norm > x_tol:
        n = cd.x / norm
        value = np.trace(tt) - n @ tt @ n
    else:
        value = np.trace(tt) - np.linalg.eigvalsh(tt)[0]
    return max(0.0, float(value))


def measurement_disturbance(rho, n) -> float:
    """||rho - Pi(rho)||^2 for the projective qubit measurement along ``n``."""
    rho = np.asarray(rho)
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    ndots = np.tensordot(n, PAULI, axes=1)
    post = np.zeros_like(rho, dtype=complex)
    for sign in (1.0, -1.0):
        proj = kron((np.eye(2) + sign * ndots) / 2.0, np.eye(3))
        post += proj @ rho @ proj
    return hs_norm_sq(rho - post)


def _bloch(theta, phi):
    return np.array([
        math.sin(theta) * math.cos(phi),
        math.sin(theta) * math.sin(phi),
        math.cos(theta),
    ])


def _disturbance_grid(rho, thetas, phis):
    # vectorised measurement_disturbance over a (theta, phi) mesh
    rho = np.asarray(rho, dtype=complex)
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    n = np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1)
    ndots = np.einsum("...i,ijk->...jk", n, PAULI)
    eye3 = np.eye(3)
    post = np.zeros(th.shape + (6, 6), dtype=complex)
    for sign in (1.0, -1.0):
        p2 = (np.eye(2) + sign * ndots) / 2.0
        proj = np.einsum("...ij,kl->...ikjl", p2, eye3).reshape(th.shape + (6, 6))
        post += proj @ rho @ proj
    return np.sum(np.abs(rho - post) ** 2, axis=(-2, -1))


def min_bruteforce(rho, coarse_steps: int = 64, x_tol: float = X_TOL, step_tol: float = 1e-6) -> float:
    """MIN by direct maximisation of the measurement disturbance.

    A ``coarse_steps x 2*coarse_steps`` (theta, phi) scan seeds a Nelder-Mead
    refinement. If the qubit marginal is polarised, only measurements along
    its Bloch vector leave it invariant and the search collapses to that axis.
    """
    if coarse_steps < 32:
        raise ValueError("coarse_steps must be >= 32")
    rho = np.asarray(rho, dtype=complex)
    x = np.array([np.trace(rho @ kron(s, np.eye(3))).real for s in PAULI])
    norm = float(np.linalg.norm(x))
    if norm > x_tol:
        return measurement_disturbance(rho, x / norm)

    thetas = np.linspace(0.0, math.pi, coarse_steps)
    phis = np.linspace(0.0, 2.0 * math.pi, 2 * coarse_steps, endpoint=False)
    grid = _disturbance_grid(rho, thetas, phis)
    # argmax returns the first maximum in (theta, phi) order
    i, j = np.unravel_index(np.argmax(grid), grid.shape)
    best = float(grid[i, j])

    res = minimize(
        lambda a: -measurement_disturbance(rho, _bloch(*a)),
        x0=[thetas[i], phis[j]],
        method="Nelder-Mead",
        options={"xatol": step_tol, "fatol": 1e-15, "initial_simplex": [
            [thetas[i], phis[j]],
            [thetas[i] + 0.05, phis[j]],
            [thetas[i], phis[j] + 0.05],
        ]},
    )
    return max(best, float(-res.fun))


def l1_coherence(rho) -> float:
    a = np.abs(np.asarray(rho))
    return float(np.sum(a[~np.eye(a.shape[0], dtype=bool)]))


def evaluate(rho, measures=("negativity", "min", "coherence")) -> MeasureResult:
    """All three quantifiers on one state, closed-form paths where possible.

    Quantifiers not listed in ``measures`` are reported as NaN.
    """
    nan = float("nan")
    neg = nan
    if "negativity" in measures:
        try:
            neg = negativity_closed(rho)
        except MalformedStateError:
            neg = negativity_generic(rho)
    return MeasureResult(
        negativity=neg,
        min_value=min_closed(rho) if "min" in measures else nan,
        coherence_l1=l1_coherence(rho) if "coherence" in measures else nan,
    )
