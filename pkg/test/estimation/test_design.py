import math

# noinspection PyPackageRequirements
import pytest

from src.core.bloch_state import BlochState
from src.core.constants import INFINITY
from src.estimation.design import CountRecord, ExperimentDesign, sample_counts
from src.utils.errors import DomainError
from test.test_base import A, TestBase


class TestExperimentDesign(TestBase):
    def test_construction(self):
        design = ExperimentDesign.of(["1", 2, "inf"], trials=1_000, seed=7)
        assert design.placements == (1, 2, INFINITY)
        assert design.total_trials == 3_000
        assert design.distinct_placements == 3
        assert design.as_dict() == {"placements": ["1", "2", "inf"], "trials_per_placement": 1_000, "seed": 7}

    def test_errors(self):
        with pytest.raises(ValueError, match="at least one placement"):
            ExperimentDesign(())
        with pytest.raises(DomainError, match="use escape_prob_quadrature"):
            ExperimentDesign((7,))
        with pytest.raises(DomainError, match="N must be equal to or greater than 1"):
            ExperimentDesign((1,), trials_per_placement=0)
        with pytest.raises(DomainError, match="seed must be"):
            ExperimentDesign((1,), seed=-1)

    def test_streams_are_independent(self):
        design = ExperimentDesign((1, 2), seed=11)
        first = design.rng(0, 0).random(5).tolist()
        assert first == design.rng(0, 0).random(5).tolist()
        assert first != design.rng(0, 1).random(5).tolist()
        assert first != design.rng(1, 0).random(5).tolist()


class TestCountRecord(TestBase):
    def test_frequencies(self):
        counts = CountRecord((1, 2), (25, 0), (100, 50))
        assert counts.frequencies == (0.25, 0.0)
        assert counts.at_boundary
        assert not CountRecord((1,), (3,), (10,)).at_boundary
        assert counts.as_dict()["escapes"] == [25, 0]

    def test_validation(self):
        with pytest.raises(DomainError, match="k must be less than or equal to 10"):
            CountRecord((1,), (11,), (10,))
        with pytest.raises(ValueError, match="one \\(k, N\\) pair per placement"):
            CountRecord((1, 2), (1,), (10, 10))


class TestSampleCounts(TestBase):
    def test_dark_state_never_escapes(self):
        counts = sample_counts(BlochState.of("pi/2", "pi"), ExperimentDesign((1,), 10_000, seed=3))
        assert counts.escapes == (0,)

    def test_frequency(self):
        n = 1_000_000
        counts = sample_counts(BlochState(0.0, 0.0), ExperimentDesign((1,), n, seed=5))
        sigma = math.sqrt(A * (1 - A) / n)
        assert abs(counts.frequencies[0] - A) < 4 * sigma

    def test_reproducible(self):
        state = BlochState(1.1, 0.4)
        design = ExperimentDesign((1, 2, INFINITY), 100_000, seed=42)
        assert sample_counts(state, design, 3) == sample_counts(state, design, 3)
        assert sample_counts(state, design, 3) != sample_counts(state, design, 4)
        other_seed = ExperimentDesign((1, 2, INFINITY), 100_000, seed=43)
        assert sample_counts(state, design) != sample_counts(state, other_seed)
