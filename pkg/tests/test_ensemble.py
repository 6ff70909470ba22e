from __future__ import annotations

import math

import pytest

from canalyzer.canalization import pk
from canalyzer.ensemble import (
    BiasSpec,
    empirical_expectation,
    expected_pk,
    expected_strength,
    figure1_rows,
    probability_positive_pk,
    sample_biased,
)


class TestSampling:
    def test_deterministic_stream(self):
        spec = BiasSpec(4, 0.3, seed=5, count=10)
        first = [f.bits for f in sample_biased(spec)]
        second = [f.bits for f in sample_biased(spec)]
        assert first == second

    def test_index_addressable(self):
        # Dropping the first k functions of a stream equals a fresh stream
        # shifted by construction: each index is seeded independently.
        long = [f.bits for f in sample_biased(BiasSpec(3, 0.5, seed=9, count=6))]
        short = [f.bits for f in sample_biased(BiasSpec(3, 0.5, seed=9, count=3))]
        assert long[:3] == short

    def test_seed_changes_stream(self):
        a = [f.bits for f in sample_biased(BiasSpec(4, 0.5, seed=1, count=5))]
        b = [f.bits for f in sample_biased(BiasSpec(4, 0.5, seed=2, count=5))]
        assert a != b

    def test_bias_shifts_ones_density(self):
        dense = sum(
            f.bits.bit_count() for f in sample_biased(BiasSpec(6, 0.9, 3, 50))
        )
        sparse = sum(
            f.bits.bit_count() for f in sample_biased(BiasSpec(6, 0.1, 3, 50))
        )
        total = 50 * 64
        assert dense / total > 0.8
        assert sparse / total < 0.2

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            BiasSpec(3, 0.0, 0, 1)
        with pytest.raises(ValueError):
            BiasSpec(3, 1.0, 0, 1)
        with pytest.raises(ValueError):
            BiasSpec(3, 0.5, 0, 0)


class TestClosedForm:
    def test_formula_small_cases(self):
        # E[P_k] = (1-p)^e + p^e with e = 2^(n-k) subcube points.
        assert expected_pk(3, 3, 0.5) == pytest.approx(1.0)
        assert expected_pk(3, 2, 0.5) == pytest.approx(0.5)
        assert expected_pk(4, 2, 0.3) == pytest.approx(0.7**4 + 0.3**4)

    def test_symmetry_in_bias(self):
        for n, k in [(5, 2), (6, 4), (8, 1)]:
            for p in (0.1, 0.25, 0.4):
                assert expected_pk(n, k, p) == pytest.approx(expected_pk(n, k, 1 - p))

    def test_u_shape_in_bias(self):
        # Minimum at p = 1/2, growing toward the edges.
        values = [expected_pk(6, 3, p) for p in (0.5, 0.3, 0.1, 0.01)]
        assert values == sorted(values)

    def test_monotone_in_k(self):
        values = [expected_pk(6, k, 0.3) for k in range(7)]
        assert values == sorted(values)

    def test_no_overflow_at_large_exponent(self):
        assert expected_pk(20, 1, 0.5) == 0.0  # underflows cleanly
        assert expected_pk(20, 20, 0.5) == pytest.approx(1.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            expected_pk(4, 5, 0.5)
        with pytest.raises(ValueError):
            expected_pk(4, 2, 0.0)

    def test_expected_strength_trend(self):
        values = [expected_strength(n, 0.5) for n in range(2, 17)]
        peak = values.index(max(values))
        assert all(values[i] > values[i + 1] for i in range(peak, len(values) - 1))
        assert values[-1] < 0.05
        with pytest.raises(ValueError):
            expected_strength(1, 0.5)


class TestEmpirical:
    def test_mean_within_three_sigma(self):
        for n, k, p in [(5, 3, 0.5), (5, 4, 0.3), (6, 5, 0.7)]:
            mean, se = empirical_expectation(n, k, p, count=800, seed=17)
            closed = expected_pk(n, k, p)
            assert abs(mean - closed) <= max(3 * se, 1e-9)

    def test_deterministic(self):
        a = empirical_expectation(5, 3, 0.4, 200, seed=3)
        b = empirical_expectation(5, 3, 0.4, 200, seed=3)
        assert a == b

    def test_single_sample_has_zero_se(self):
        mean, se = empirical_expectation(4, 2, 0.5, count=1, seed=0)
        assert se == 0.0

    def test_probability_positive(self):
        q, se = probability_positive_pk(4, 1, 0.5, count=400, seed=5)
        assert 0.0 <= q <= 1.0
        assert se == pytest.approx(math.sqrt(q * (1 - q) / 400))
        # Any full assignment canalizes, so P_n > 0 always.
        q_full, _ = probability_positive_pk(4, 4, 0.5, count=50, seed=5)
        assert q_full == 1.0


class TestFigureRows:
    def test_grid_shape_and_values(self):
        rows = figure1_rows([4], lambda n: [n - 1], p_start=0.1, p_stop=0.9, p_step=0.4)
        assert [(p, n, k) for p, n, k, _ in rows] == [
            (0.1, 4, 3),
            (0.5, 4, 3),
            (0.9, 4, 3),
        ]
        for p, n, k, value in rows:
            assert value == pytest.approx(expected_pk(n, k, p))

    def test_fixed_sequence_ks(self):
        rows = figure1_rows([3, 4], [1], p_start=0.5, p_stop=0.5, p_step=0.1)
        assert len(rows) == 2
