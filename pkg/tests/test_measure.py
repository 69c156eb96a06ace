import math

import numpy as np
import pytest

from qsandbox.entropy import pairwise_entanglement
from qsandbox.errors import ContractError, NumericError
from qsandbox.measure import measure_collapse, outcome_probabilities, projector_z
from qsandbox.states import (
    DensityMatrix,
    density_from_vector,
    partial_trace,
    validate_density,
)

from conftest import FakeRng

PLUS = density_from_vector(np.array([1, 1]) / math.sqrt(2))
PHI_PLUS = density_from_vector(np.array([1, 0, 0, 1]) / math.sqrt(2))


def seeded():
    return np.random.Generator(np.random.PCG64(1234))


class TestProjectors:
    def test_explicit_matrices(self):
        assert np.array_equal(projector_z(0), np.diag([1.0, 0.0]).astype(complex))
        assert np.array_equal(projector_z(1), np.diag([0.0, 1.0]).astype(complex))

    def test_completeness(self):
        assert np.array_equal(projector_z(0) + projector_z(1), np.eye(2))

    def test_idempotent_exactly(self):
        for s in (0, 1):
            p = projector_z(s)
            assert np.array_equal(p @ p, p)

    def test_bad_outcome_label(self):
        with pytest.raises(ContractError):
            projector_z(2)


class TestProbabilities:
    def test_basis_state(self):
        rho = density_from_vector(np.array([1, 0], dtype=complex))
        assert outcome_probabilities(rho, 0) == (1.0, 0.0)

    def test_plus_state(self):
        p0, p1 = outcome_probabilities(PLUS, 0)
        assert abs(p0 - 0.5) <= 1e-12 and abs(p1 - 0.5) <= 1e-12

    def test_bell_qubit(self):
        for q in (0, 1):
            p0, p1 = outcome_probabilities(PHI_PLUS, q)
            assert abs(p0 - 0.5) <= 1e-12 and abs(p1 - 0.5) <= 1e-12

    def test_bad_qubit(self):
        with pytest.raises(ContractError):
            outcome_probabilities(PLUS, 1)


class TestCollapse:
    def test_deterministic_branch_leaves_state(self):
        rho = density_from_vector(np.array([0, 1], dtype=complex))
        outcome, post = measure_collapse(rho, 0, FakeRng([0.9999]))
        assert outcome.s == 1
        assert np.max(np.abs(post.mat - rho.mat)) <= 1e-12

    def test_plus_with_low_draw_collapses_to_zero(self):
        outcome, post = measure_collapse(PLUS, 0, FakeRng([0.3]))
        assert outcome.s == 0
        assert outcome.rng_draw == 0.3
        assert np.max(np.abs(post.mat - np.diag([1.0, 0.0]))) <= 1e-12

    def test_bell_with_high_draw_collapses_both(self):
        outcome, post = measure_collapse(PHI_PLUS, 0, FakeRng([0.7]))
        assert outcome.s == 1
        want = np.zeros((4, 4), dtype=complex)
        want[3, 3] = 1.0  # |11><11|
        assert np.max(np.abs(post.mat - want)) <= 1e-12

    def test_outcome_matches_draw_rule(self):
        # strict tie rule: s = 0 iff draw < p0, on an exactly representable p0
        quarter = density_from_vector(np.array([0.5, math.sqrt(0.75)], dtype=complex))
        outcome, _ = measure_collapse(quarter, 0, FakeRng([0.25]))
        assert outcome.s == 1  # draw == p0 selects outcome 1
        outcome, _ = measure_collapse(quarter, 0, FakeRng([0.2499]))
        assert outcome.s == 0

    def test_idempotence(self):
        rng = seeded()
        outcome1, post1 = measure_collapse(PHI_PLUS, 0, rng)
        outcome2, post2 = measure_collapse(post1, 0, rng)
        assert outcome1.s == outcome2.s
        assert np.max(np.abs(post2.mat - post1.mat)) <= 1e-10

    def test_trace_preserved(self):
        rng = seeded()
        for _ in range(200):
            _, post = measure_collapse(PHI_PLUS, 1, rng)
            assert abs(np.trace(post.mat) - 1.0) <= 1e-10

    def test_measured_qubit_lands_on_pole(self):
        rng = seeded()
        for _ in range(50):
            outcome, post = measure_collapse(PHI_PLUS, 0, rng)
            reduced = partial_trace(post, (0,))
            want = np.diag([1.0, 0.0]) if outcome.s == 0 else np.diag([0.0, 1.0])
            assert np.max(np.abs(reduced.mat - want)) <= 1e-8

    def test_entanglement_destroyed(self):
        rng = seeded()
        _, post = measure_collapse(PHI_PLUS, 0, rng)
        assert abs(pairwise_entanglement(post, 0, 1)) <= 1e-6
        assert validate_density(post, 1e-8).passed

    def test_statistics_on_plus(self):
        rng = seeded()
        zeros = sum(measure_collapse(PLUS, 0, rng)[0].s == 0 for _ in range(10_000))
        assert 0.48 <= zeros / 10_000 <= 0.52

    def test_bell_outcomes_always_agree(self):
        rng = seeded()
        for _ in range(1000):
            first, post = measure_collapse(PHI_PLUS, 0, rng)
            second, _ = measure_collapse(post, 1, rng)
            assert first.s == second.s

    def test_replay_alignment_consumes_one_draw_per_measurement(self):
        # forced outcomes still consume a draw, so streams stay aligned
        one = density_from_vector(np.array([0, 1], dtype=complex))
        rng_a = seeded()
        measure_collapse(one, 0, rng_a)   # forced branch
        follow_a = rng_a.random()
        rng_b = seeded()
        measure_collapse(PLUS, 0, rng_b)  # probabilistic branch
        follow_b = rng_b.random()
        assert follow_a == follow_b
