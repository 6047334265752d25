"""Engine checks against frozen values and the brute-force oracle."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from hyperpd import (
    CLASSICAL_ORDER,
    STRATEGIES,
    STRATEGY_ORDER,
    PayoffParams,
    build_payoff_table,
    entangler,
    final_state,
    is_nash,
    is_pareto_optimal,
    kron3,
    outcome_probabilities,
    payoffs,
    strategy,
)

SQRT_HALF = 2.0 ** -0.5

ALL_PROFILES = list(itertools.product(STRATEGY_ORDER, repeat=3))


def basis(index):
    vec = np.zeros(8, dtype=complex)
    vec[index] = 1.0
    return vec


# ---------------------------------------------------------------- strategies

def test_strategy_matrices_are_the_exact_constants():
    assert np.array_equal(STRATEGIES["C"].matrix, np.eye(2))
    assert np.array_equal(STRATEGIES["D"].matrix, np.array([[0, 1], [1, 0]]))
    assert np.array_equal(
        STRATEGIES["H"].matrix,
        np.array([[SQRT_HALF, SQRT_HALF], [SQRT_HALF, -SQRT_HALF]]),
    )
    assert np.array_equal(STRATEGIES["Q"].matrix, np.array([[1j, 0], [0, -1j]]))
    assert np.array_equal(STRATEGIES["Sigma"].matrix, np.array([[0, 1], [-1, 0]]))


@pytest.mark.parametrize("tag", STRATEGY_ORDER)
def test_strategy_matrices_unitary(tag):
    m = STRATEGIES[tag].matrix
    assert np.abs(m @ m.conj().T - np.eye(2)).max() < 1e-12


def test_strategy_coercion_rejects_unknown_tag():
    with pytest.raises(ValueError, match="unknown strategy"):
        strategy("X")


def test_strategy_matrices_read_only():
    with pytest.raises(ValueError):
        STRATEGIES["C"].matrix[0, 0] = 2.0


# ---------------------------------------------------------------- kron / gate

def test_kron3_identity():
    eye2 = np.eye(2)
    assert np.array_equal(kron3(eye2, eye2, eye2), np.eye(8))


def test_kron3_first_factor_most_significant():
    flip = STRATEGIES["D"].matrix
    eye2 = np.eye(2, dtype=complex)
    assert np.allclose(kron3(flip, eye2, eye2) @ basis(0b000), basis(0b100))
    assert np.allclose(kron3(flip, flip, flip) @ basis(0b000), basis(0b111))


def test_entangler_on_000():
    expected = (basis(0b000) + 1j * basis(0b111)) * SQRT_HALF
    assert np.abs(entangler() @ basis(0) - expected).max() < 1e-12


def test_entangler_unitary():
    gate = entangler()
    assert np.abs(gate @ gate.conj().T - np.eye(8)).max() < 1e-12


def test_entangler_applied_twice():
    # frozen from the dense oracle: J J |000> = i |111>
    gate = entangler()
    assert np.abs(gate @ (gate @ basis(0)) - 1j * basis(0b111)).max() < 1e-12


# ---------------------------------------------------------------- final state

def test_final_state_all_cooperate_is_identity_channel():
    assert np.abs(final_state("C", "C", "C") - basis(0b000)).max() < 1e-12


def test_final_state_all_defect():
    # frozen from the dense oracle
    assert np.abs(final_state("D", "D", "D") - basis(0b111)).max() < 1e-12


def test_final_state_all_sigma_has_unit_000_probability():
    # frozen from the dense oracle: i|000> up to nothing, exactly a phase
    state = final_state("Sigma", "Sigma", "Sigma")
    assert np.abs(state - 1j * basis(0b000)).max() < 1e-12
    assert abs(abs(state[0]) ** 2 - 1.0) < 1e-12


def test_final_state_all_q_is_minus_111():
    assert np.abs(final_state("Q", "Q", "Q") + basis(0b111)).max() < 1e-12


@pytest.mark.parametrize("profile", ALL_PROFILES)
def test_final_state_normalized(profile):
    state = final_state(*profile)
    assert abs(np.vdot(state, state).real - 1.0) < 1e-10


def test_final_states_match_oracle():
    for profile in ALL_PROFILES:
        expected = np.array(oracle.final_state(*profile))
        assert np.abs(final_state(*profile) - expected).max() < 1e-10


# ---------------------------------------------------------------- payoffs

@pytest.mark.parametrize(
    "profile,expected",
    [
        (("C", "C", "C"), (6.0, 6.0, 6.0)),
        (("D", "C", "C"), (9.0, 3.0, 3.0)),
        (("Q", "Q", "Q"), (1.0, 1.0, 1.0)),  # derived: final state is -|111>
        (("Sigma", "Sigma", "Sigma"), (6.0, 6.0, 6.0)),
    ],
)
def test_payoff_examples_at_t9(profile, expected):
    got = payoffs(*profile, PayoffParams(9.0))
    assert np.abs(np.array(got) - np.array(expected)).max() < 1e-10


def test_outcome_payoff_rule():
    params = PayoffParams(temptation=7.5)
    assert params.outcome_payoff(False, 0) == 6.0
    assert params.outcome_payoff(True, 0) == 7.5
    assert params.outcome_payoff(False, 1) == 3.0
    assert params.outcome_payoff(True, 1) == 5.0
    assert params.outcome_payoff(False, 2) == 0.0
    assert params.outcome_payoff(True, 2) == 1.0


def test_prisoners_dilemma_flag():
    assert not PayoffParams(5.0).is_prisoners_dilemma
    assert not PayoffParams(6.0).is_prisoners_dilemma
    assert PayoffParams(6.01).is_prisoners_dilemma


def test_classical_profiles_reproduce_the_outcome_table():
    params = PayoffParams(9.0)
    cells = oracle.outcome_cells(9.0)
    for profile in itertools.product(CLASSICAL_ORDER, repeat=3):
        bits = tuple(1 if tag == "D" else 0 for tag in profile)
        got = payoffs(*profile, params)
        assert np.abs(np.array(got) - np.array(cells[bits])).max() < 1e-10


# ---------------------------------------------------------------- table cache

def test_table_lookup_matches_fresh_evaluation(table9):
    for profile in ALL_PROFILES:
        assert table9.lookup(*profile) == payoffs(*profile, table9.params)


def test_table_examples(table9):
    assert np.allclose(table9.lookup("C", "C", "C"), (6, 6, 6), atol=1e-10)
    assert np.allclose(table9.lookup("D", "D", "D"), (1, 1, 1), atol=1e-10)


def test_table_player_symmetry(table9):
    rng = np.random.default_rng(2)
    profiles = [tuple(rng.choice(STRATEGY_ORDER, 3)) for _ in range(10)]
    perms = list(itertools.permutations(range(3)))
    for profile in profiles:
        base = table9.lookup(*profile)
        for perm in perms:
            permuted = tuple(profile[p] for p in perm)
            expected = tuple(base[p] for p in perm)
            assert np.abs(np.array(table9.lookup(*permuted)) - np.array(expected)).max() < 1e-10


def test_outcome_probabilities_sum_to_one():
    for profile in ALL_PROFILES:
        assert abs(outcome_probabilities(*profile).sum() - 1.0) < 1e-10


def test_payoffs_match_oracle_at_t9(table9):
    reference = oracle.payoff_map(9.0)
    for profile in ALL_PROFILES:
        assert np.abs(np.array(table9.lookup(*profile)) - np.array(reference[profile])).max() < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.0, max_value=20.0, allow_nan=False))
def test_payoff_bounds(temptation):
    table = build_payoff_table(PayoffParams(temptation))
    upper = max(6.0, temptation)
    assert table.values.min() >= -1e-10
    assert table.values.max() <= upper + 1e-10


def test_payoffs_affine_in_temptation():
    low = build_payoff_table(PayoffParams(5.0)).values
    mid = build_payoff_table(PayoffParams(7.0)).values
    high = build_payoff_table(PayoffParams(9.0)).values
    assert np.abs(mid - (low + high) / 2.0).max() < 1e-9


# ---------------------------------------------------------------- equilibria

def test_all_defect_is_nash_of_the_classical_subgame(table9):
    assert is_nash(("D", "D", "D"), table9, moves=CLASSICAL_ORDER)


def test_all_sigma_is_nash_up_to_temptation_six():
    for temptation in (5.0, 6.0):
        table = build_payoff_table(PayoffParams(temptation))
        assert is_nash(("Sigma", "Sigma", "Sigma"), table)


def test_all_sigma_is_not_nash_above_temptation_six(table9):
    # a unilateral switch to Q collects the lone-defector payoff
    assert table9.lookup("Q", "Sigma", "Sigma")[0] == pytest.approx(9.0, abs=1e-10)
    assert not is_nash(("Sigma", "Sigma", "Sigma"), table9)


def test_all_cooperate_is_not_nash_at_t9(table9):
    assert not is_nash(("C", "C", "C"), table9)


def test_pareto_examples(table9):
    assert is_pareto_optimal(("Sigma", "Sigma", "Sigma"), table9)
    assert is_pareto_optimal(("C", "C", "C"), table9)
    assert not is_pareto_optimal(("D", "D", "D"), table9)


@pytest.mark.parametrize("temptation", [5.0, 9.0])
def test_nash_matches_oracle_enumeration(temptation):
    table = build_payoff_table(PayoffParams(temptation))
    reference = oracle.payoff_map(temptation)
    for profile in ALL_PROFILES:
        assert is_nash(profile, table) == oracle.nash_by_enumeration(profile, reference)


def test_pareto_matches_oracle_enumeration(table9):
    reference = oracle.payoff_map(9.0)
    for profile in ALL_PROFILES:
        assert is_pareto_optimal(profile, table9) == oracle.pareto_optimal_by_enumeration(
            profile, reference
        )
