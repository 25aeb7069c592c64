import math

import numpy as np
import pytest

import ssvar

PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)
HALF = np.eye(2, dtype=complex) / 2
BELL = np.array([[1, 0], [0, 1]], dtype=complex) / math.sqrt(2)


def test_pure_and_mixed_values():
    assert ssvar.ssv_pure(PLUS) == pytest.approx(0.5)
    assert ssvar.ssv_pure(np.ones(3, dtype=complex) / math.sqrt(3)) == pytest.approx(2 / 3)
    assert ssvar.ssv_mixed(HALF) == pytest.approx(0.5)
    assert ssvar.kappa(np.array([1.0, -1.0])) == pytest.approx(2.0)


def test_enumeration_matches_closed_form():
    psi = ssvar.haar_random_pure(4, 3)
    a = np.array([0.3, -1.2, 2.0, 0.7])
    assert ssvar.symmetrized_variance(psi, a, enumerate=True) == pytest.approx(
        ssvar.symmetrized_variance(psi, a), abs=1e-12)
    rho = ssvar.random_density(4, 4, 5)
    assert ssvar.ssv_mixed_bruteforce(rho, a) == pytest.approx(ssvar.ssv_mixed(rho), abs=1e-10)


def test_roof_on_qubits():
    rho = ssvar.bloch_to_density(0.6, 1.1, 0.4)
    lo = ssvar.optimize_roof(rho, "min", restarts=4)
    assert lo["value"] == pytest.approx(0.5 * 0.36 * math.sin(1.1) ** 2, abs=1e-6)
    assert lo["value"] == pytest.approx(ssvar.vc_qubit(rho), abs=1e-6)
    assert lo["reconstruction_error"] <= 1e-8
    hi = ssvar.optimize_roof(rho, "max", restarts=4)
    assert hi["value"] == pytest.approx(ssvar.ssv_mixed(rho), abs=1e-6)
    d = ssvar.qubit_optimal_decomposition(0.5, math.pi / 2, 0.0, "max")
    assert sorted(d["weights"]) == pytest.approx([0.25, 0.75])


def test_gap_and_fisher():
    g = ssvar.adjudicate_assistance_gap(HALF, restarts=4)
    assert g["numeric_gap"] == pytest.approx(0.5, abs=1e-6)
    assert g["claimed_rhs"] == pytest.approx(5 / 16)
    assert g["matches"] == "mixedness"
    rho = ssvar.random_density(2, 2, 8)
    a = np.array([0.0, 1.0])
    r = ssvar.min_average_variance(rho, a, restarts=4)
    assert 4 * r["value"] == pytest.approx(ssvar.qfi(rho, a), abs=1e-5)


def test_entanglement():
    assert ssvar.ssv_bipartite(BELL) == pytest.approx(0.5)
    assert ssvar.concurrence_pure(BELL) == pytest.approx(1.0)
    assert ssvar.entanglement_from_expectations(BELL) == pytest.approx(0.5)
    assert ssvar.schmidt_coefficients(BELL) == pytest.approx([math.sqrt(0.5)] * 2)
    v = BELL.reshape(4)
    assert ssvar.entanglement_vc(np.outer(v, v.conj()), 2, 2, restarts=4)["value"] == pytest.approx(0.5, abs=1e-8)


def test_errors_become_value_errors():
    with pytest.raises(ssvar.SsvarError, match="NotNormalized"):
        ssvar.ssv_pure(np.array([0.6, 0.6], dtype=complex))
    with pytest.raises(ValueError):
        ssvar.ssv_mixed(np.eye(2, dtype=complex))
    with pytest.raises(ValueError):
        ssvar.optimize_roof(HALF, "sideways")
