import numpy as np
import pytest

from dgmsim.numerics import spectral_norm
from dgmsim.scenarios.cnot import (
    BellPreparation,
    cnot_matrix,
    cnot_sequence,
    gate_fidelity,
    ideal_product,
    rotation,
    sqisw,
)
from dgmsim.scenarios.dfs import (
    expected_logical_superop,
    fig2_problem,
    logical_generators,
    logical_isometry,
    orthogonal_restriction,
    projected_logical_superop,
    swap_generator,
    three_qubit_coupling,
)


@pytest.mark.parametrize("name", ["x", "y", "z", "entangling", "zz"])
@pytest.mark.parametrize("taus", [(1.0, 1.0), (1.0, 0.5)])
def test_projected_generator_matches_logical_form(name, taus):
    coup = logical_generators(0.7)[name]
    got = projected_logical_superop(coup, taus[: coup.n_modules])
    assert np.max(np.abs(got - expected_logical_superop(coup))) < 1e-9


def test_projected_generator_agrees_with_orthogonal_restriction():
    # for these controls the oblique projection equals the plain Pi K Pi
    for coup in logical_generators(1.0).values():
        assert np.allclose(coup.logical, orthogonal_restriction(coup), atol=1e-12)


def test_hopping_sign_is_negative_half():
    coup = logical_generators(1.0)["entangling"]
    assert np.allclose(coup.logical, swap_generator(-0.5))
    assert not np.allclose(coup.logical, swap_generator(0.5))


def test_zz_edge_acts_on_both_excited_logical_states():
    k = logical_generators(1.0)["zz"].logical
    assert np.isclose(k[3, 3], 1.0) and np.isclose(k[0, 0], 0.0)


def test_three_qubit_coefficients():
    coup = three_qubit_coupling(1.0)
    got = projected_logical_superop(coup)
    assert np.max(np.abs(got - expected_logical_superop(coup))) < 1e-9


def test_logical_isometry_is_isometric():
    v = logical_isometry(3, 2)
    assert v.shape == (64, 9) and np.allclose(v.conj().T @ v, np.eye(9))


def test_fig2_problem_rejects_unknown_coupling():
    with pytest.raises(ValueError):
        fig2_problem("xx")


def test_rotations_and_sqisw_are_unitary():
    for u in (rotation("x", 0.3), rotation("y", -1.2), sqisw()):
        assert np.allclose(u.conj().T @ u, np.eye(u.shape[0]))
    iswap = np.array([[1, 0, 0, 0], [0, 0, -1j, 0], [0, -1j, 0, 0], [0, 0, 0, 1]])
    assert np.allclose(sqisw() @ sqisw(), iswap)


def test_seven_gates_compose_to_cnot():
    segs = cnot_sequence()
    assert len(segs) == 7
    assert np.isclose(gate_fidelity(ideal_product(segs), cnot_matrix()), 1.0, atol=1e-14)


def test_segment_controls_project_to_their_gates():
    """exp(P0 K P0) on each segment reproduces the ideal logical unitary."""
    prep = BellPreparation()
    assert spectral_norm(prep.effective_state() - prep.ideal_state()) < 1e-12


def test_bell_preparation_error_decreases():
    prep = BellPreparation()
    assert prep.error(3000.0) < prep.error(30.0) / 10
    inf = BellPreparation(metric="infidelity")
    assert 0 <= inf.error(3000.0) <= prep.error(3000.0) + 1e-12


def test_bell_preparation_metric_validation():
    with pytest.raises(ValueError):
        BellPreparation(metric="fidelity")
