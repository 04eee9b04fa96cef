import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from nidimer.linalg import kron, partial_transpose_first
from nidimer.measures import (
    GELL_MANN,
    PAULI,
    MalformedStateError,
    correlation_data,
    evaluate,
    l1_coherence,
    measurement_disturbance,
    min_bruteforce,
    min_closed,
    negativity_closed,
    negativity_generic,
    pt_eigenvalues_closed,
)
from nidimer.model import PAPER_PARAMS, closed_form_spectrum, ground_state, thermal_state_closed

from conftest import random_density_matrix, random_unitary

MIXED = np.eye(6, dtype=complex) / 6


def test_gell_mann_basis():
    assert GELL_MANN.shape == (8, 3, 3)
    gram = np.einsum("aij,bji->ab", GELL_MANN, GELL_MANN)
    assert_allclose(gram, 2 * np.eye(8), atol=1e-14)
    for lam in GELL_MANN:
        assert_allclose(lam, lam.conj().T)
        assert abs(np.trace(lam)) < 1e-15


def test_negativity_generic_examples(params):
    assert negativity_generic(MIXED) == 0.0
    assert negativity_generic(ground_state(params, 0.0)) == pytest.approx(1 / 3, abs=1e-12)
    phi3 = closed_form_spectrum(params, 0.0).states[2]
    assert negativity_generic(np.outer(phi3, phi3.conj())) == pytest.approx(math.sqrt(2) / 3, abs=1e-12)


def test_negativity_max_entangled_pure():
    psi = np.zeros(6, dtype=complex)
    psi[0] = psi[4] = 1 / math.sqrt(2)
    assert negativity_generic(np.outer(psi, psi.conj())) == pytest.approx(0.5)


def test_negativity_closed_examples(params):
    rho = thermal_state_closed(params, 0.0, 300.0)
    assert negativity_closed(rho) == pytest.approx(negativity_generic(rho), abs=1e-10)
    diag = np.diag([0.1, 0.2, 0.3, 0.15, 0.15, 0.1]).astype(complex)
    assert negativity_closed(diag) == 0.0
    assert negativity_closed(thermal_state_closed(params, 0.0, 560.0)) == 0.0


def test_negativity_closed_rejects_other_layouts(rng):
    with pytest.raises(MalformedStateError):
        negativity_closed(random_density_matrix(rng))


def test_dual_path_negativity_random(params, rng):
    for _ in range(10_000):
        rho = thermal_state_closed(params, rng.uniform(0, 450), rng.uniform(0.5, 600))
        assert abs(negativity_closed(rho) - negativity_generic(rho)) <= 1e-10


def test_pt_spectrum_sums_to_one(params, rng):
    for _ in range(200):
        rho = thermal_state_closed(params, rng.uniform(0, 450), rng.uniform(0.5, 600))
        assert abs(np.sum(pt_eigenvalues_closed(rho)) - 1) < 1e-12
        assert abs(np.sum(np.linalg.eigvalsh(partial_transpose_first(rho))) - 1) < 1e-12


def test_correlation_data_examples(params):
    cd = correlation_data(MIXED)
    assert_allclose(cd.x, 0, atol=1e-15)
    assert_allclose(cd.tmat, 0, atol=1e-15)
    for t in (1.0, 50.0, 300.0, 600.0):
        assert_allclose(correlation_data(thermal_state_closed(params, 0.0, t)).x, 0, atol=1e-12)
    x = correlation_data(thermal_state_closed(params, 45.0, 300.0)).x
    assert abs(x[0]) < 1e-14 and abs(x[1]) < 1e-14
    assert abs(x[2]) > 1e-3


def test_correlation_data_reconstructs_state(rng):
    # rho = I/6 + x.sigma (x) I/6 + I (x) y.Lambda/4 + sum t_ij sigma_i (x) Lambda_j / 2
    rho = random_density_matrix(rng)
    cd = correlation_data(rho)
    y = np.array([np.trace(rho @ kron(np.eye(2), lam)).real for lam in GELL_MANN])
    rebuilt = np.eye(6) / 6
    rebuilt = rebuilt + sum(cd.x[i] * kron(PAULI[i], np.eye(3)) for i in range(3)) / 6
    rebuilt = rebuilt + sum(y[j] * kron(np.eye(2), GELL_MANN[j]) for j in range(8)) / 4
    rebuilt = rebuilt + sum(cd.tmat[i, j] * kron(PAULI[i], GELL_MANN[j]) for i in range(3) for j in range(8)) / 2
    assert_allclose(rebuilt, rho, atol=1e-12)
    assert np.linalg.norm(cd.x) <= 1 + 1e-12


def test_min_trivial_cases():
    assert min_closed(MIXED) == pytest.approx(0.0, abs=1e-15)
    assert min_bruteforce(MIXED) == pytest.approx(0.0, abs=1e-15)
    for n in ([1, 0, 0], [0.3, -0.2, 0.9]):
        assert measurement_disturbance(MIXED, n) == pytest.approx(0.0, abs=1e-15)


def test_min_product_state_measured_along_its_axis(rng):
    up = np.diag([1.0, 0.0]).astype(complex)
    rho = kron(up, random_density_matrix(rng, 3))
    assert min_bruteforce(rho) == pytest.approx(0.0, abs=1e-15)
    assert min_closed(rho) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("b", [0.0, 45.0])
def test_min_dual_path_at_300K(params, b):
    rho = thermal_state_closed(params, b, 300.0)
    assert min_closed(rho) == pytest.approx(min_bruteforce(rho), abs=1e-6)


def test_min_dual_path_ground_mixture(params):
    rho = ground_state(params, 0.0)
    assert min_closed(rho) == pytest.approx(min_bruteforce(rho), abs=1e-6)
    assert min_closed(rho) == pytest.approx(2 / 9, abs=1e-12)


def test_min_bruteforce_requires_resolution():
    with pytest.raises(ValueError):
        min_bruteforce(MIXED, coarse_steps=8)


def test_min_dual_path_random_unpolarised(rng):
    # mixing with the qubit spin-flip forces x = 0, so the full sphere is searched
    flip = kron(PAULI[1], np.eye(3))
    for _ in range(10):
        rho = random_density_matrix(rng)
        sym = 0.5 * (rho + flip @ rho.conj() @ flip)
        assert_allclose(correlation_data(sym).x, 0, atol=1e-12)
        assert min_closed(sym) == pytest.approx(min_bruteforce(sym), abs=1e-6)


def test_min_dual_path_random_polarised(rng):
    for _ in range(10):
        rho = random_density_matrix(rng)
        assert min_closed(rho) == pytest.approx(min_bruteforce(rho), abs=1e-6)


def test_l1_coherence_examples(params):
    assert l1_coherence(np.diag([0.5, 0.1, 0.1, 0.1, 0.1, 0.1])) == 0.0
    assert l1_coherence(MIXED) == 0.0
    assert l1_coherence(ground_state(params, 0.0)) == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-12)
    rho = thermal_state_closed(params, 90.0, 200.0)
    assert l1_coherence(rho) == pytest.approx(2 * (abs(rho[1, 3]) + abs(rho[2, 4])))


def test_monotone_min_decay(params):
    for b in (0.0, 45.0, 90.0, 150.0):
        m = [min_closed(thermal_state_closed(params, b, t)) for t in np.arange(5.0, 600.1, 5.0)]
        assert np.all(np.diff(m) <= 1e-12)


def test_survival_hierarchy(params):
    for t in np.linspace(5, 600, 40):
        for b in np.linspace(0, 450, 30):
            r = evaluate(thermal_state_closed(params, b, t))
            if r.negativity > 0:
                assert r.min_value > 0 and r.coherence_l1 > 0
            assert r.negativity <= 0.5
    r = evaluate(thermal_state_closed(params, 0.0, 580.0))
    assert r.negativity == 0.0 and r.min_value > 0


def test_local_unitary_invariance(params, rng):
    for b, t in [(0.0, 300.0), (45.0, 100.0), (150.0, 20.0)]:
        rho = thermal_state_closed(params, b, t)
        ua, vb = random_unitary(rng, 2), random_unitary(rng, 3)
        rotated = kron(ua, vb) @ rho @ kron(ua, vb).conj().T
        assert negativity_generic(rotated) == pytest.approx(negativity_generic(rho), abs=1e-10)
        assert min_closed(rotated) == pytest.approx(min_closed(rho), abs=1e-6)
        only_b = kron(np.eye(2), vb) @ rho @ kron(np.eye(2), vb).conj().T
        assert min_closed(only_b) == pytest.approx(min_closed(rho), abs=1e-6)


@settings(max_examples=50, deadline=None)
@given(b=st.floats(0, 450), t=st.floats(1, 600))
def test_evaluate_ranges(b, t):
    r = evaluate(thermal_state_closed(PAPER_PARAMS, b, t))
    assert 0 <= r.negativity <= 0.5
    assert r.min_value >= 0 and r.coherence_l1 >= 0


def test_evaluate_subset_reports_nan(params):
    r = evaluate(thermal_state_closed(params, 0.0, 300.0), measures=("negativity",))
    assert r.negativity > 0
    assert math.isnan(r.min_value) and math.isnan(r.coherence_l1)
