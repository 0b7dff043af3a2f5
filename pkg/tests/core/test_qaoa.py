"""
Tests for the QAOA circuit builders.
"""

import numpy as np
import pytest
from scipy.stats import binom

from fourierlcu.core.lcu_diagonal import penalty_lcu
from fourierlcu.core.problems.dks import build_dks
from fourierlcu.core.problems.graphs import heavy_hex_swap_graph, random_regular_graph
from fourierlcu.core.qaoa import (
    QaoaSpec,
    build_variant_circuit,
    cost_layer,
    diagonal_cost_layer,
    euler_from_single_qubit,
    init_angle,
    run_variant,
    single_branch_penalty_unitary,
    single_branch_xy_initialization,
    swap_network_cost_layer,
    unpermute_statevector,
    warm_start_circuit,
    warm_start_feasibility,
    warm_start_mixer,
    warm_start_state,
    xy_trotter_layer,
)
from fourierlcu.core.sim.circuit import run_circuit
from fourierlcu.core.sim.gates import rz
from fourierlcu.core.sim.statevector import Statevector, hamming_weights
from fourierlcu.core.su2.haar import EulerAngles
from fourierlcu.libs.utils.enums import Variant
from fourierlcu.libs.utils.errors import GateError, ProblemError


@pytest.fixture
def instance():
    return build_dks(random_regular_graph(6, 3, seed=2), 2)


def _random_state(n: int, seed: int) -> Statevector:
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return Statevector(n, amps / np.linalg.norm(amps))


def _weight_distribution(state: Statevector) -> np.ndarray:
    return np.bincount(hamming_weights(state.n), weights=np.abs(state.amps) ** 2, minlength=state.n + 1)


def test_init_angle():
    """Test sin^2(theta / 2) = k / n"""
    assert np.isclose(np.sin(init_angle(12, 4) / 2) ** 2, 4 / 12)
    with pytest.raises(ProblemError):
        init_angle(3, 4)


def test_warm_start_feasibility():
    """Test the binomial feasibility of the warm start"""
    assert warm_start_feasibility(12, 4) == pytest.approx(0.23845, abs=1e-4)
    assert warm_start_feasibility(106, 35) == pytest.approx(0.0822, abs=5e-4)
    state = warm_start_state(12, 4)
    assert _weight_distribution(state)[4] == pytest.approx(warm_start_feasibility(12, 4))


@pytest.mark.parametrize("n, k", [(12, 4), (8, 3)])
def test_warm_start_circuit_feasibility(n, k):
    """Test P(wt = k) of the simulated R_Y layer against the binomial pmf"""
    state = run_circuit(warm_start_circuit(n, init_angle(n, k)))
    assert _weight_distribution(state)[k] == pytest.approx(binom.pmf(k, n, k / n), abs=1e-6)
    assert warm_start_feasibility(n, k) == pytest.approx(binom.pmf(k, n, k / n), abs=1e-12)


def test_cost_layer_matches_diagonal_phase(instance):
    """Test R_Z / R_ZZ cost layer against the diagonal cost up to global phase"""
    state = _random_state(instance.n, 0)
    gated = run_circuit(cost_layer(instance.qubo, 0.45), state)
    diagonal = run_circuit(diagonal_cost_layer(instance.qubo, 0.45), state)
    assert gated.equal_up_to_phase(diagonal, atol=1e-9)


def test_warm_start_is_mixer_eigenstate():
    """Test that the warm-start mixer fixes the warm start"""
    state = warm_start_state(5, 2)
    for beta in (-2.0, 0.3, 1.7):
        out = run_circuit(warm_start_mixer(5, beta, init_angle(5, 2)), state)
        assert out.fidelity(state) == pytest.approx(1.0, abs=1e-10)


def test_trotter_layer_conserves_weight():
    """Test that the XY Trotter circuit keeps P(wt) unchanged"""
    state = _random_state(5, 1)
    out = run_circuit(xy_trotter_layer(5, 0.6, steps=3), state)
    assert np.allclose(_weight_distribution(out), _weight_distribution(state))
    with pytest.raises(GateError):
        xy_trotter_layer(5, 0.6, steps=0)


def test_euler_round_trip():
    """Test ZYZ extraction including the degenerate theta = 0 case"""
    rng = np.random.default_rng(3)
    for _ in range(50):
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        u, _ = np.linalg.qr(z)
        angles, phi = euler_from_single_qubit(u)
        assert np.allclose(np.exp(1j * phi) * angles.matrix(), u)
    angles, phi = euler_from_single_qubit(rz(0.8))
    assert angles.theta == 0.0
    assert np.allclose(np.exp(1j * phi) * angles.matrix(), rz(0.8))


def test_single_branch_xy_initialization():
    """Test that the XY seed reproduces the penalty branch up to a trailing R_Z"""
    beta, theta, theta_init = 0.7, 2.1, init_angle(6, 2)
    g = single_branch_xy_initialization(beta, theta, theta_init)
    target = single_branch_penalty_unitary(beta, theta, theta_init)
    probs_target = np.abs(target[:, 0]) ** 2
    probs_seed = np.abs(g.matrix()[:, 0]) ** 2
    assert np.allclose(probs_seed, probs_target)
    assert g.alpha == 0.0


def test_lcu_branches_sum_to_coherent(instance):
    """Test sum_j c_j e^{i theta_j n / 2} |psi_j> equals the coherent state"""
    params = {"beta": 0.41, "gamma": -0.73}
    lcu = penalty_lcu(instance, params["gamma"])
    branch_spec = QaoaSpec(instance, Variant.PENALTY_LCU, params)
    total = np.zeros(2**instance.n, dtype=complex)
    for j in lcu.active_branches:
        theta = float(lcu.thetas[j])
        total += lcu.coeffs[j] * np.exp(0.5j * theta * instance.n) * run_variant(branch_spec, theta).amps
    coherent = run_variant(QaoaSpec(instance, Variant.COHERENT_PENALTY, params))
    assert abs(np.vdot(coherent.amps, total)) ** 2 == pytest.approx(1.0, abs=1e-8)


def test_variant_parameters(instance):
    """Test parameter requirements of each variant"""
    with pytest.raises(GateError):
        build_variant_circuit(QaoaSpec(instance, Variant.PENALTY_LCU, {"beta": 0.1, "gamma": 0.2}))
    with pytest.raises(GateError):
        build_variant_circuit(QaoaSpec(instance, Variant.COHERENT_PENALTY, {"beta": 0.1}))
    with pytest.raises(GateError):
        QaoaSpec(instance, Variant.XY_LCU, {"beta": 0.1, "gamma": 0.2}, depth=2)
    xy = build_variant_circuit(
        QaoaSpec(instance, Variant.XY_LCU, {"gamma": 0.2}), EulerAngles(0.1, 0.2, 0.3)
    )
    assert xy.name == "xy-lcu"


def test_depth_two_coherent(instance):
    """Test per-layer parameter lists"""
    spec = QaoaSpec(instance, Variant.COHERENT_XY_TROTTER, {"beta": [0.1, 0.2], "gamma": [0.3, 0.4]}, depth=2)
    state = run_variant(spec)
    assert state.norm() == pytest.approx(1.0)
    with pytest.raises(GateError):
        run_variant(QaoaSpec(instance, Variant.COHERENT_XY_TROTTER, {"beta": [0.1], "gamma": [0.3]}, depth=2))


def test_single_branch_xy_with_mixer(instance):
    """Test the five-parameter single-branch circuit"""
    params = {"beta": 0.3, "gamma": 0.2, "alpha": 0.1, "vartheta": 1.0, "chi": 2.0}
    with_mixer = build_variant_circuit(QaoaSpec(instance, Variant.SINGLE_BRANCH_XY, params))
    without = build_variant_circuit(
        QaoaSpec(instance, Variant.SINGLE_BRANCH_XY, {k: v for k, v in params.items() if k != "beta"})
    )
    assert len(with_mixer) == len(without) + 3 * instance.n


def test_swap_network_cost_layer():
    """Test the routed cost layer against the direct one after unpermuting"""
    hh = heavy_hex_swap_graph(1, 1, 3)
    instance = build_dks(hh.graph, 4)
    state = _random_state(instance.n, 8)
    circuit, placement = swap_network_cost_layer(hh, instance.objective_qubo, 0.6)
    routed = unpermute_statevector(run_circuit(circuit, state), placement)
    direct = run_circuit(cost_layer(instance.objective_qubo, 0.6), state)
    assert routed.fidelity(direct) == pytest.approx(1.0, abs=1e-9)


def test_unpermute_identity():
    """Test that the identity placement changes nothing"""
    state = _random_state(3, 9)
    assert np.allclose(unpermute_statevector(state, np.arange(3)).amps, state.amps)
    with pytest.raises(ProblemError):
        unpermute_statevector(state, np.array([0, 0, 1]))
