from __future__ import annotations

import pytest

from canalyzer.verify import SUITES, run_suite, run_suites


class TestSingleSuites:
    @pytest.mark.parametrize("suite", SUITES)
    def test_exhaustive_arity3_passes(self, suite):
        result = run_suite(suite, 3)
        assert result.exhaustive
        assert result.checked == 256
        assert result.passed, result.violations[:3]

    @pytest.mark.parametrize("suite", ["cor32", "cor46"])
    def test_exhaustive_arity4_passes(self, suite):
        result = run_suite(suite, 4)
        assert result.exhaustive
        assert result.checked == 65536
        assert result.passed, result.violations[:3]

    def test_sampled_mode_beyond_cap(self):
        result = run_suite("thm31", 5, samples=50, seed=1)
        assert not result.exhaustive
        assert result.checked == 50
        assert result.seed == 1
        assert result.passed

    def test_sampled_mode_deterministic(self):
        a = run_suite("cor46", 5, samples=40, seed=9)
        b = run_suite("cor46", 5, samples=40, seed=9)
        assert (a.checked, a.violations) == (b.checked, b.violations)

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("thm99", 3)

    def test_min_arity_enforced(self):
        with pytest.raises(ValueError):
            run_suite("thm33", 2)


class TestRunSuites:
    def test_all_skips_under_min_arity(self):
        results = run_suites("all", 2, samples=10)
        names = [r.suite for r in results]
        assert "thm33" not in names
        assert set(names) == {"thm31", "cor32", "thm45", "cor46"}

    def test_all_at_arity3(self):
        import time

        start = time.perf_counter()
        results = run_suites("all", 3)
        elapsed = time.perf_counter() - start
        assert [r.suite for r in results] == list(SUITES)
        assert all(r.passed for r in results)
        assert elapsed < 60

    def test_single_name_passthrough(self):
        results = run_suites("cor46", 3)
        assert len(results) == 1
        assert results[0].suite == "cor46"
