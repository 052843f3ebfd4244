import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from dinerq import ewl
from dinerq.errors import DomainError
from dinerq.statevector import equal_up_to_global_phase

thetas = st.floats(0.0, math.pi, allow_nan=False)
phis = st.floats(0.0, math.pi / 2, allow_nan=False)


def test_entangler_matches_closed_form():
    j = ewl.entangler()
    psi = j[:, 0]
    expected = np.zeros(16, complex)
    expected[0] = 1 / np.sqrt(2)
    expected[15] = 1j / np.sqrt(2)
    assert np.max(np.abs(psi - expected)) < 1e-12
    assert abs(j[0, 0] - 1 / np.sqrt(2)) < 1e-12
    assert np.allclose(j @ j.conj().T, np.eye(16), atol=1e-9)
    assert np.max(np.abs(j - oracle.game_operator())) < 1e-12


def test_disentangler():
    j, jd = ewl.entangler(), ewl.disentangler()
    assert np.allclose(jd @ j, np.eye(16), atol=1e-9)
    assert np.max(np.abs(jd.conj().T - j)) < 1e-12
    ghz = j[:, 0]
    back = jd @ ghz
    assert abs(back[0] - 1.0) < 1e-12


def test_named_strategy_matrices():
    assert np.allclose(ewl.strategy_unitary(ewl.C), np.eye(2))
    assert np.allclose(ewl.strategy_unitary(ewl.E), [[0, 1], [-1, 0]])
    assert np.allclose(ewl.strategy_unitary(ewl.A), np.diag([1j, -1j]))


def test_strategy_domain():
    with pytest.raises(DomainError):
        ewl.Strategy.parametric(-0.1, 0.0)
    with pytest.raises(DomainError):
        ewl.Strategy.parametric(0.0, math.pi)
    with pytest.raises(DomainError):
        ewl.Strategy.named("B")
    ewl.Strategy.parametric(math.pi, math.pi / 2)  # closed endpoints allowed


@pytest.mark.parametrize(
    "letters,basis_index",
    [("CCCC", 0b0000), ("AAAA", 0b0000), ("EEEA", 0b0001)],
)
def test_final_state_examples(letters, basis_index):
    psi = ewl.final_state(ewl.StrategyProfile.from_letters(letters))
    expected = np.zeros(16, complex)
    expected[basis_index] = 1.0
    assert equal_up_to_global_phase(psi.amps, expected)


@pytest.mark.parametrize(
    "letters,outcome",
    [("CECE", "0101"), ("CCEA", "1101"), ("CCCE", "0001")],
)
def test_outcome_distribution_point_masses(letters, outcome):
    dist = ewl.outcome_distribution(ewl.StrategyProfile.from_letters(letters))
    assert dist.top_outcome() == outcome
    assert dist.p[int(outcome, 2)] > 1 - 1e-9
    naive = oracle.distribution(letters)
    assert np.max(np.abs(dist.p - naive)) < 1e-12


def test_classical_reduction_all_16():
    # every {C,E}^4 profile collapses onto the matching bit string
    for combo in itertools.product("CE", repeat=4):
        letters = "".join(combo)
        dist = ewl.outcome_distribution(ewl.StrategyProfile.from_letters(letters))
        index = int("".join("1" if ch == "E" else "0" for ch in letters), 2)
        assert dist.p[index] > 1 - 1e-9


def test_permutation_equivariance():
    rng = np.random.default_rng(23)
    for _ in range(20):
        strategies = [
            ewl.Strategy.parametric(rng.uniform(0, math.pi), rng.uniform(0, math.pi / 2))
            for _ in range(4)
        ]
        base = ewl.outcome_distribution(ewl.StrategyProfile(*strategies)).p
        for perm in itertools.permutations(range(4)):
            permuted = ewl.outcome_distribution(
                ewl.StrategyProfile(*(strategies[p] for p in perm))
            ).p
            for k in range(16):
                bits = [(k >> (3 - q)) & 1 for q in range(4)]
                k_perm = sum(bits[p] << (3 - q) for q, p in enumerate(perm))
                assert abs(base[k] - permuted[k_perm]) < 1e-9


@given(st.sampled_from("CEA"))
def test_parametric_continuity_at_named_points(name):
    named = ewl.Strategy.named(name)
    parametric = ewl.Strategy.parametric(*ewl.NAMED_PARAMS[name])
    rest = [ewl.C, ewl.E, ewl.A]
    d1 = ewl.outcome_distribution(ewl.StrategyProfile(named, *rest[:3])).p
    d2 = ewl.outcome_distribution(ewl.StrategyProfile(parametric, *rest[:3])).p
    assert np.max(np.abs(d1 - d2)) < 1e-12


@settings(max_examples=200, deadline=None)
@given(thetas, phis, thetas, phis)
def test_pipeline_preserves_norm(t1, p1, t2, p2):
    profile = ewl.StrategyProfile(
        ewl.Strategy.parametric(t1, p1),
        ewl.Strategy.parametric(t2, p2),
        ewl.Strategy.parametric(t2, p1),
        ewl.Strategy.parametric(t1, p2),
    )
    psi = ewl.final_state(profile)
    assert abs(np.sum(np.abs(psi.amps) ** 2) - 1.0) < 1e-9


@settings(max_examples=50, deadline=None)
@given(thetas, phis)
def test_strategy_unitary_is_unitary(theta, phi):
    u = ewl.strategy_unitary(ewl.Strategy.parametric(theta, phi))
    assert np.max(np.abs(u @ u.conj().T - np.eye(2))) < 1e-12


def test_profile_letters_and_parsing():
    p = ewl.StrategyProfile.from_letters("CEAC")
    assert p.letters == "CEAC"
    q = ewl.StrategyProfile(ewl.C, ewl.E, ewl.Strategy.parametric(1.0, 0.5), ewl.C)
    assert q.letters is None
    with pytest.raises(DomainError):
        ewl.StrategyProfile.from_letters("CE")
