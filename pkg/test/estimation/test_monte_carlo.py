import math

import numpy as np
# noinspection PyPackageRequirements
import pytest

from src.core.bloch_state import BlochState
from src.estimation.design import ExperimentDesign
from src.estimation.monte_carlo import monte_carlo
from src.utils.errors import DomainError
from test.test_base import TestBase

TRUTH = BlochState(math.pi / 4, math.pi / 3)


class TestMonteCarlo(TestBase):
    def test_reproducible(self):
        design = ExperimentDesign((1, 2), 10_000, seed=99)
        first = monte_carlo(TRUTH, design, replicates=100, workers=1)
        second = monte_carlo(TRUTH, design, replicates=100, workers=4)
        assert np.array_equal(first.empirical_covariance, second.empirical_covariance)
        assert first.mle_primary == second.mle_primary
        assert first.n_replicates == 100
        assert first.seed == 99

    def test_independent_seeds_agree(self):
        first = monte_carlo(TRUTH, ExperimentDesign((1, 2), 10_000, seed=1), replicates=100)
        second = monte_carlo(TRUTH, ExperimentDesign((1, 2), 10_000, seed=2), replicates=100)
        for i in range(2):
            a, b = first.empirical_covariance[i, i], second.empirical_covariance[i, i]
            assert abs(a - b) <= 0.3 * max(a, b)

    def test_attains_bound(self):
        report = monte_carlo(BlochState(math.pi / 2, math.pi / 2), ExperimentDesign((1, 2), 100_000, seed=2024),
                             replicates=500)
        assert not report.rank_deficient and not report.degenerate
        for ratio in report.variance_ratios:
            assert 0.9 <= ratio <= 1.5
        record = report.as_dict()
        assert record["n_replicates"] == 500
        assert record["design"]["trials_per_placement"] == 100_000

    def test_degenerate_truth(self):
        report = monte_carlo(BlochState(math.pi / 2, math.pi), ExperimentDesign((1,), 1_000, seed=4),
                             replicates=100)
        assert report.degenerate
        assert report.rank_deficient
        assert report.crb.rank == 0
        assert all(math.isnan(r) for r in report.variance_ratios)

    def test_minimum_replicates(self):
        with pytest.raises(DomainError, match="replicates must be equal to or greater than 100"):
            monte_carlo(TRUTH, ExperimentDesign((1, 2)), replicates=50)
