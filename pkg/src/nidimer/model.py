"""Mixed spin-(1/2, 1) Heisenberg dimer in a longitudinal field.

All energies are in Kelvin (J/k_B etc.) and fields in Tesla. The Zeeman
energy of spin i is ``g_i * field_unit * B``; ``field_unit=1`` reproduces the
usual figure axes, ``field_unit=MU_B_OVER_KB`` is the physical conversion.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .linalg import hermitian_eig, kron

MU_B_OVER_KB = 0.67171381563  # K/T, CODATA 2018

SQRT2 = math.sqrt(2.0)

# spin-1/2 (radical, subsystem a)
S_X = np.array([[0, 1], [1, 0]], dtype=complex) / 2
S_Y = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
S_Z = np.array([[1, 0], [0, -1]], dtype=complex) / 2

# spin-1 (Ni, subsystem b), basis m = 1, 0, -1
L_X = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / SQRT2
L_Y = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) / SQRT2
L_Z = np.diag([1.0, 0.0, -1.0]).astype(complex)

I2 = np.eye(2, dtype=complex)
I3 = np.eye(3, dtype=complex)

BASIS_LABELS = ("|1/2,1>", "|1/2,0>", "|1/2,-1>", "|-1/2,1>", "|-1/2,0>", "|-1/2,-1>")


@dataclass(frozen=True)
class ModelParams:
    j_over_kb: float = 505.0
    g_rad: float = 2.005
    g_ni: float = 2.275
    d_over_kb: float = 0.0
    field_unit: float = 1.0

    def __post_init__(self):
        if not self.j_over_kb > 0:
            raise ValueError(f"j_over_kb must be > 0 (antiferromagnetic), got {self.j_over_kb}")
        if not self.g_rad > 0 or not self.g_ni > 0:
            raise ValueError("g-factors must be positive")
        if not self.field_unit > 0:
            raise ValueError(f"field_unit must be > 0, got {self.field_unit}")
        if not math.isfinite(self.d_over_kb):
            raise ValueError("d_over_kb must be finite")


PAPER_PARAMS = ModelParams()


@dataclass(frozen=True)
class ZeemanFields:
    h1: float  # radical
    h2: float  # nickel


@dataclass(frozen=True)
class Spectrum:
    """Closed-form eigenpairs; ``states[k]`` is the eigenvector of ``energies[k]``.

    Index k = 0..5 corresponds to the labels delta_1..delta_6 / phi_1..phi_6.
    """

    energies: np.ndarray
    states: np.ndarray
    alphas: tuple  # (alpha_minus, alpha_plus)
    betas: tuple  # (beta_minus, beta_plus)


def zeeman_fields(params: ModelParams, b: float) -> ZeemanFields:
    if not math.isfinite(b):
        raise ValueError(f"field must be finite, got {b}")
    return ZeemanFields(
        h1=params.g_rad * params.field_unit * b,
        h2=params.g_ni * params.field_unit * b,
    )


def build_hamiltonian(params: ModelParams, b: float) -> np.ndarray:
    z = zeeman_fields(params, b)
    exchange = kron(S_X, L_X) + kron(S_Y, L_Y) + kron(S_Z, L_Z)
    h = params.j_over_kb * exchange - z.h1 * kron(S_Z, I3) - z.h2 * kron(I2, L_Z)
    if params.d_over_kb != 0.0:
        h = h + params.d_over_kb * kron(I2, L_Z @ L_Z)
    return h


@dataclass(frozen=True)
class _Scalars:
    j: float
    d: float
    h1: float
    h2: float
    eta_m: float
    eta_p: float
    r_m: float  # sqrt(eta_m^2 + 8 J^2)
    r_p: float
    chi_m: float
    chi_p: float
    mean_m: float  # centre of the S^z_tot = +1/2 doublet
    mean_p: float  # centre of the S^z_tot = -1/2 doublet


def _scalars(params: ModelParams, b: float) -> _Scalars:
    z = zeeman_fields(params, b)
    j, d = params.j_over_kb, params.d_over_kb
    eta_m = j - 2.0 * (z.h1 - z.h2) - 2.0 * d
    eta_p = j + 2.0 * (z.h1 - z.h2) - 2.0 * d
    return _Scalars(
        j=j,
        d=d,
        h1=z.h1,
        h2=z.h2,
        eta_m=eta_m,
        eta_p=eta_p,
        r_m=math.sqrt(eta_m * eta_m + 8.0 * j * j),
        r_p=math.sqrt(eta_p * eta_p + 8.0 * j * j),
        chi_m=j + 2.0 * d - (z.h1 + 2.0 * z.h2),
        chi_p=j + 2.0 * d + (z.h1 + 2.0 * z.h2),
        mean_m=-(j + 2.0 * z.h2) / 4.0 + d / 2.0,
        mean_p=-(j - 2.0 * z.h2) / 4.0 + d / 2.0,
    )


def _energies(s: _Scalars) -> np.ndarray:
    return np.array([
        s.chi_m / 2.0,
        s.chi_p / 2.0,
        s.mean_m - s.r_m / 4.0,
        s.mean_m + s.r_m / 4.0,
        s.mean_p - s.r_p / 4.0,
        s.mean_p + s.r_p / 4.0,
    ])


def closed_form_spectrum(params: ModelParams, b: float) -> Spectrum:
    s = _scalars(params, b)
    a_m = math.sqrt((1.0 - s.eta_m / s.r_m) / 2.0)
    a_p = math.sqrt((1.0 + s.eta_m / s.r_m) / 2.0)
    b_m = math.sqrt((1.0 - s.eta_p / s.r_p) / 2.0)
    b_p = math.sqrt((1.0 + s.eta_p / s.r_p) / 2.0)

    states = np.zeros((6, 6), dtype=complex)
    states[0, 0] = 1.0  # |1/2, 1>
    states[1, 5] = 1.0  # |-1/2, -1>
    states[2, 1], states[2, 3] = a_m, -a_p
    states[3, 1], states[3, 3] = a_p, a_m
    states[4, 2], states[4, 4] = b_p, -b_m
    states[5, 2], states[5, 4] = b_m, b_p
    return Spectrum(_energies(s), states, (a_m, a_p), (b_m, b_p))


def _check_temperature(t):
    if not t > 0:
        raise ValueError(f"temperature must be > 0 K, got {t}")


def _log_cosh(x):
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)


def log_partition_function(params: ModelParams, b: float, t: float) -> float:
    """log Z in the closed cosh form, evaluated without overflow."""
    _check_temperature(t)
    s = _scalars(params, b)
    beta = 1.0 / t
    terms = [
        -beta * (s.j + 2.0 * s.d) / 2.0 + _log_cosh(beta * (s.h1 + 2.0 * s.h2) / 2.0),
        -beta * s.mean_m + _log_cosh(beta * s.r_m / 4.0),
        -beta * s.mean_p + _log_cosh(beta * s.r_p / 4.0),
    ]
    top = max(terms)
    return math.log(2.0) + top + math.log(sum(math.exp(x - top) for x in terms))


def partition_function(params: ModelParams, b: float, t: float) -> float:
    """Z = 2[e^{-beta(J+2D)/2} cosh(beta(h1+2h2)/2) + e^{beta(J-2D)/4}(...)].

    Returns ``inf`` when Z exceeds the float range; use
    :func:`log_partition_function` at very low temperature.
    """
    log_z = log_partition_function(params, b, t)
    return math.exp(log_z) if log_z < 709.0 else math.inf


def _exp_cosh_sinh(s, x):
    # e^s cosh x and e^s sinh x, with s +/- x <= 0 guaranteed by the caller
    hi, lo = math.exp(s + x), math.exp(s - x)
    return 0.5 * (hi + lo), 0.5 * (hi - lo)


def thermal_state_closed(params: ModelParams, b: float, t: float) -> np.ndarray:
    """Gibbs state assembled from the analytic matrix elements.

    Only the diagonal and the two coherences <1/2,0|rho|-1/2,1> and
    <1/2,-1|rho|-1/2,0> are non-zero. Boltzmann factors are measured from
    the lowest level, so ``t`` down to ~1e-3 K is safe.
    """
    _check_temperature(t)
    s = _scalars(params, b)
    beta = 1.0 / t
    e0 = float(np.min(_energies(s)))

    r11 = math.exp(-beta * (s.chi_m / 2.0 - e0))
    r66 = math.exp(-beta * (s.chi_p / 2.0 - e0))
    c_m, sh_m = _exp_cosh_sinh(-beta * (s.mean_m - e0), beta * s.r_m / 4.0)
    c_p, sh_p = _exp_cosh_sinh(-beta * (s.mean_p - e0), beta * s.r_p / 4.0)

    r22 = c_m - (s.eta_m / s.r_m) * sh_m
    r44 = c_m + (s.eta_m / s.r_m) * sh_m
    r33 = c_p + (s.eta_p / s.r_p) * sh_p
    r55 = c_p - (s.eta_p / s.r_p) * sh_p
    r24 = -math.sqrt(8.0) * s.j / s.r_m * sh_m
    r35 = -math.sqrt(8.0) * s.j / s.r_p * sh_p

    z = r11 + r22 + r33 + r44 + r55 + r66
    rho = np.diag(np.array([r11, r22, r33, r44, r55, r66], dtype=complex))
    rho[1, 3] = rho[3, 1] = r24
    rho[2, 4] = rho[4, 2] = r35
    return rho / z


def thermal_state_numeric(params: ModelParams, b: float, t: float) -> np.ndarray:
    """exp(-H/t) / Tr exp(-H/t) by numerical diagonalisation of H."""
    _check_temperature(t)
    w, v = hermitian_eig(build_hamiltonian(params, b))
    p = np.exp(-(w - w[0]) / t)
    p /= p.sum()
    return (v * p) @ v.conj().T


def ground_state(params: ModelParams, b: float, degeneracy_tol: float = 1e-9) -> np.ndarray:
    """Zero-temperature limit of the Gibbs state.

    A non-degenerate ground level gives a pure projector. A degenerate one
    (B = 0, or exactly at a level crossing) gives the equal-weight mixture
    over the degenerate eigenvectors.
    """
    spec = closed_form_spectrum(params, b)
    e = spec.energies
    lowest = np.flatnonzero(e - e.min() <= degeneracy_tol * params.j_over_kb)
    rho = np.zeros((6, 6), dtype=complex)
    for k in lowest:
        phi = spec.states[k]
        rho += np.outer(phi, phi.conj())
    return rho / len(lowest)


def level_crossing_field(params: ModelParams) -> float:
    """Field above which |1/2,1> replaces phi_3 as the ground state."""
    def gap(b):
        e = _energies(_scalars(params, b))
        return e[0] - e[2]

    hi = 1.0
    for _ in range(64):
        if gap(hi) < 0:
            break
        hi *= 2.0
    else:
        raise ValueError("no level crossing found")
    return brentq(gap, 0.0, hi, xtol=1e-12, rtol=1e-14)


def validate_density_matrix(rho, tol: float = 1e-12) -> None:
    """Raise ValueError unless ``rho`` is a 6x6 Hermitian, unit-trace, PSD matrix."""
    rho = np.asarray(rho)
    if rho.shape != (6, 6):
        raise ValueError(f"density matrix must be 6x6, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"density matrix trace is {np.trace(rho).real}, expected 1")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] < -tol:
        raise ValueError("density matrix has a negative eigenvalue")
