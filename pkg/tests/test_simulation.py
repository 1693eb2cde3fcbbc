import math

import numpy as np
import pytest

from combinf import simulation as sim
from combinf.connectivity import pearson_correlation_matrix
from combinf.errors import ValidationError


class TestRngStream:
    def test_reproducible(self):
        a = sim.RngStream(7, 3).generator().standard_normal(10)
        b = sim.RngStream(7, 3).generator().standard_normal(10)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = sim.RngStream(7, 0).generator().standard_normal(10)
        b = sim.RngStream(7, 1).generator().standard_normal(10)
        assert not np.array_equal(a, b)


class TestConfig:
    def test_defaults_match_benchmark(self):
        cfg = sim.SimulationConfig(seed=1)
        assert (cfg.n, cfg.p, cfg.sigma) == (10, 40, 0.1)
        assert cfg.permutation_fractions == (0.001, 0.005, 0.01)
        assert cfg.pairings == sim.DEFAULT_PAIRINGS

    def test_bad_module_count(self):
        with pytest.raises(ValidationError, match="/pairings/0"):
            sim.SimulationConfig(seed=1, pairings=((3, 4),))

    def test_bad_fraction(self):
        with pytest.raises(ValidationError, match="/permutation_fractions/1"):
            sim.SimulationConfig(seed=1, permutation_fractions=(0.01, 1.5))

    def test_zero_replications(self):
        with pytest.raises(ValidationError, match="/replications"):
            sim.SimulationConfig(seed=1, replications=0)

    def test_json_round_trip(self):
        cfg = sim.SimulationConfig(seed=5, n=6, p=12, replications=2,
                                   pairings=((0, 0), (3, 4)))
        assert sim.SimulationConfig.from_json(cfg.to_json()) == cfg

    def test_unknown_key(self):
        with pytest.raises(ValidationError, match="/bogus"):
            sim.SimulationConfig.from_json({"seed": 1, "bogus": 2})

    def test_missing_seed(self):
        with pytest.raises(ValidationError, match="/seed"):
            sim.SimulationConfig.from_json({"n": 10})


class TestModularData:
    def test_sigma_zero_forces_unit_correlation(self):
        data = sim.simulate_modular_data(10, 40, 4, 0.0, sim.RngStream(3, 0))
        corr = pearson_correlation_matrix(data).values
        c = 10
        for j in range(4):
            block = corr[c * j:c * (j + 1), c * j:c * (j + 1)]
            assert np.all(np.abs(block - 1.0) <= 1e-12)

    def test_zero_modules_no_block_structure(self):
        data = sim.simulate_modular_data(10, 40, 0, 0.1, sim.RngStream(3, 1))
        corr = pearson_correlation_matrix(data).values
        iu = np.triu_indices(40, k=1)
        assert np.abs(corr[iu]).mean() < 0.5

    def test_block_structure_visible(self):
        data = sim.simulate_modular_data(10, 40, 4, 0.1, sim.RngStream(3, 2))
        corr = pearson_correlation_matrix(data).values
        within = corr[0:10, 0:10][np.triu_indices(10, k=1)]
        between = corr[0:10, 10:20].ravel()
        assert within.mean() > 0.9
        assert abs(between.mean()) < 0.5

    def test_invalid_module_count(self):
        with pytest.raises(ValidationError):
            sim.simulate_modular_data(10, 40, 7, 0.1, sim.RngStream(3, 3))

    def test_deterministic(self):
        a = sim.simulate_modular_data(5, 8, 2, 0.1, sim.RngStream(9, 4))
        b = sim.simulate_modular_data(5, 8, 2, 0.1, sim.RngStream(9, 4))
        assert np.array_equal(a.values, b.values)


class TestCombinatorialTrial:
    def test_identical_groups_give_one(self):
        data = sim.simulate_modular_data(10, 20, 4, 0.1, sim.RngStream(5, 0))
        assert sim.run_combinatorial_trial(data, data) == 1.0

    def test_observed_discrepancy_matches_high_level(self):
        a = sim.simulate_modular_data(10, 20, 4, 0.1, sim.RngStream(5, 1))
        b = sim.simulate_modular_data(10, 20, 5, 0.1, sim.RngStream(5, 2))
        from combinf.exact import exact_pvalue
        d = sim.observed_discrepancy(a, b)
        assert sim.run_combinatorial_trial(a, b) == exact_pvalue(19, d).real_value


class TestPermutationTest:
    def test_permutation_count(self):
        assert sim.permutation_count(0.001, 10) == 184
        assert sim.permutation_count(0.005, 10) == 923
        assert sim.permutation_count(0.01, 10) == 1847
        assert sim.permutation_count(1e-9, 10) == 1

    def test_cap_with_warning(self):
        a = sim.simulate_modular_data(3, 6, 2, 0.1, sim.RngStream(8, 0))
        b = sim.simulate_modular_data(3, 6, 3, 0.1, sim.RngStream(8, 1))
        with pytest.warns(UserWarning, match="capping"):
            pv = sim.permutation_test(a, b, 10 ** 6, sim.RngStream(8, 2))
        assert 0.0 <= pv <= 1.0

    def test_exhaustive_is_reproducible_and_exact(self):
        a = sim.simulate_modular_data(4, 6, 2, 0.1, sim.RngStream(8, 3))
        b = sim.simulate_modular_data(4, 6, 3, 0.1, sim.RngStream(8, 4))
        cap = math.comb(8, 4)
        p1 = sim.permutation_test(a, b, cap, sim.RngStream(8, 5), exhaustive=True)
        p2 = sim.permutation_test(a, b, cap, sim.RngStream(99, 6), exhaustive=True)
        assert p1 == p2
        assert 0.0 < p1 <= 1.0

    def test_identical_groups_give_one(self):
        a = sim.simulate_modular_data(4, 6, 2, 0.1, sim.RngStream(8, 7))
        pv = sim.permutation_test(a, a, 50, sim.RngStream(8, 8))
        assert pv == 1.0

    def test_add_one_correction(self):
        a = sim.simulate_modular_data(4, 6, 2, 0.1, sim.RngStream(8, 9))
        b = sim.simulate_modular_data(4, 6, 3, 0.1, sim.RngStream(8, 10))
        plain = sim.permutation_test(a, b, 40, sim.RngStream(8, 11))
        corrected = sim.permutation_test(a, b, 40, sim.RngStream(8, 11), add_one=True)
        assert corrected == pytest.approx((plain * 40 + 1) / 41)

    def test_distinct_sampling(self):
        a = sim.simulate_modular_data(3, 6, 2, 0.1, sim.RngStream(8, 12))
        b = sim.simulate_modular_data(3, 6, 3, 0.1, sim.RngStream(8, 13))
        pv = sim.permutation_test(a, b, 15, sim.RngStream(8, 14), distinct=True)
        assert 0.0 <= pv <= 1.0

    def test_too_few_permutations_rejected(self):
        a = sim.simulate_modular_data(3, 6, 2, 0.1, sim.RngStream(8, 15))
        with pytest.raises(ValidationError):
            sim.permutation_test(a, a, 0, sim.RngStream(8, 16))


class TestExperiment:
    CFG = dict(seed=11, n=6, p=12, sigma=0.1, replications=3,
               permutation_fractions=(0.05,), pairings=((0, 0), (3, 4)))

    def test_report_shape_and_ranges(self):
        report = sim.run_experiment(sim.SimulationConfig(**self.CFG))
        assert set(report.pvalues) == {"0 vs 0", "3 vs 4"}
        for pairing in report.pvalues:
            for method in ("combinatorial", "permute_5%"):
                vals = report.pvalues[pairing][method]
                assert len(vals) == 3
                assert all(0.0 <= v <= 1.0 for v in vals)
                assert 0.0 <= report.mean(pairing, method) <= 1.0
                assert report.std(pairing, method) >= 0.0

    def test_deterministic_json(self):
        cfg = sim.SimulationConfig(**self.CFG)
        r1 = sim.run_experiment(cfg)
        r2 = sim.run_experiment(cfg)
        assert r1.to_json_text() == r2.to_json_text()

    def test_single_replication_zero_std(self):
        cfg = sim.SimulationConfig(**{**self.CFG, "replications": 1})
        report = sim.run_experiment(cfg)
        assert report.std("0 vs 0", "combinatorial") == 0.0

    def test_text_table_mentions_all_cells(self):
        report = sim.run_experiment(sim.SimulationConfig(**self.CFG))
        table = report.to_text_table()
        assert "0 vs 0" in table and "3 vs 4" in table
        assert "combinatorial" in table and "permute_5%" in table
