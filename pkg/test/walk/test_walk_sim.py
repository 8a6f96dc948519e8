import math

import numpy as np
# noinspection PyPackageRequirements
import pytest

from src.core.bloch_state import BlochState
from src.spectral.escape_prob import escape_closed_array
from src.walk.classical_walk import simulate_classical
from src.walk.walk_config import WalkConfig
from src.walk.walk_sim import SurvivalTrace, default_tail_window, run, run_many, tail_residual
from src.utils.errors import DomainError
from test.test_base import A, TestBase

LONG_RUN = 10_000


@pytest.fixture(scope="module")
def south_pole_trace() -> SurvivalTrace:
    return run(WalkConfig(boundary_m=1, max_steps=LONG_RUN), BlochState(math.pi, 0.0))


class TestWalkSim(TestBase):
    def test_south_pole_escape(self, south_pole_trace):
        assert south_pole_trace.steps_run == LONG_RUN
        assert south_pole_trace.escape_estimate == pytest.approx(A, abs=1e-2)
        assert tail_residual(south_pole_trace, 1_000) < 1e-3

    def test_equator_zero(self):
        trace = run_many(WalkConfig(boundary_m=1, max_steps=LONG_RUN), [BlochState.of("pi/2", "pi")])[0]
        assert trace.escape_estimate == pytest.approx(0.0, abs=1e-2)

    def test_light_cone(self):
        trace = run(WalkConfig(boundary_m=50, max_steps=20), BlochState(0.0, 0.0))
        assert trace.escape_estimate == 1.0
        assert trace.absorbed_cumulative_final == 0.0
        assert tail_residual(trace, 5) == 0.0

    def test_trace_accessors(self, south_pole_trace):
        cumulative = south_pole_trace.absorbed_cumulative
        assert np.all(np.diff(cumulative) >= 0.0)
        assert cumulative[-1] == pytest.approx(south_pole_trace.absorbed_cumulative_final, abs=1e-12)
        assert south_pole_trace.survival[0] == pytest.approx(0.5, abs=1e-15)
        rows = list(south_pole_trace.rows())
        assert len(rows) == LONG_RUN
        assert rows[0][0] == 1
        assert rows[0][1] == pytest.approx(0.5, abs=1e-15)
        # escape estimates converge from above
        assert np.all(south_pole_trace.survival >= south_pole_trace.escape_estimate - 1e-12)

    def test_as_dict(self, south_pole_trace):
        summary = south_pole_trace.as_dict()
        assert summary["steps_run"] == LONG_RUN
        assert summary["escape_estimate"] == south_pole_trace.escape_estimate
        assert summary["tail_residual"] == tail_residual(south_pole_trace, 1_000)

    def test_tail_residual(self):
        trace = SurvivalTrace(np.array([0.5, 0.25, 0.0, 0.0]))
        assert tail_residual(trace, 2) == 0.0
        assert tail_residual(trace, 3) == 0.25
        assert tail_residual(trace, 0) == 0.0
        assert default_tail_window(4) == 1
        assert default_tail_window(10_000) == 1_000
        with pytest.raises(DomainError, match="window must be less than or equal to 4"):
            tail_residual(trace, 5)

    def test_run_many_matches_run(self):
        config = WalkConfig(rho=0.4, boundary_m=3, max_steps=300)
        states = self.random_states(5, interior=False)
        for state, trace in zip(states, run_many(config, states)):
            single = run(config, state)
            assert np.allclose(trace.absorbed_per_step, single.absorbed_per_step, atol=1e-13)

    def test_m1_hemisphere_symmetry(self):
        config = WalkConfig(boundary_m=1, max_steps=500)
        for _ in range(10):
            alpha, beta = self.rng.uniform(0.0, math.pi), self.rng.uniform(0.0, 2 * math.pi)
            north, south = run_many(config, [BlochState(alpha, beta), BlochState(math.pi - alpha, beta)])
            assert north.absorbed_cumulative_final == pytest.approx(south.absorbed_cumulative_final, abs=1e-10)

    def test_beta_reflection(self):
        for m in (1, 2, 5):
            config = WalkConfig(boundary_m=m, max_steps=1_000)
            for state in self.random_states(5, interior=False):
                direct = run(config, state)
                mirrored = run(config, state.mirror)
                assert np.allclose(direct.absorbed_per_step, mirrored.absorbed_per_step, atol=1e-14, rtol=0.0)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_survival_bounds_escape_from_above(self, m):
        states = [BlochState(0.0, 0.0), BlochState(math.pi, 0.0), BlochState(math.pi / 2, math.pi / 2),
                  BlochState(math.pi / 4, math.pi / 3)] + self.random_states(6, interior=False)
        traces = run_many(WalkConfig(boundary_m=m, max_steps=3_000), states)
        for state, trace in zip(states, traces):
            closed = float(escape_closed_array(state.alpha, state.beta, m))
            assert np.all(trace.survival >= closed - 1e-10)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_matches_closed_form(self, m):
        axis_alpha = np.linspace(0.0, math.pi, 9)
        axis_beta = np.linspace(0.0, 2 * math.pi, 9, endpoint=False)
        states = [BlochState(a, b) for a in axis_alpha for b in axis_beta]
        traces = run_many(WalkConfig(boundary_m=m, max_steps=LONG_RUN), states)
        for state, trace in zip(states, traces):
            closed = float(escape_closed_array(state.alpha, state.beta, m))
            assert trace.escape_estimate == pytest.approx(closed, abs=1e-2)
            assert tail_residual(trace, 1_000) < 1e-3


class TestClassicalWalk(TestBase):
    def test_recurrent_walk_is_absorbed(self):
        assert simulate_classical(0.5, 1, LONG_RUN).absorbed_cumulative_final >= 0.98

    def test_deterministic_walks(self):
        assert simulate_classical(0.0, 1, 10).absorbed_cumulative_final == 0.0
        assert simulate_classical(1.0, 1, 1).absorbed_cumulative_final == 1.0
        assert simulate_classical(1.0, 3, 2).absorbed_cumulative_final == 0.0

    def test_quantum_contrast(self, south_pole_trace):
        classical = simulate_classical(0.5, 1, LONG_RUN)
        assert south_pole_trace.absorbed_cumulative_final == pytest.approx(2 / math.pi, abs=1e-2)
        assert classical.absorbed_cumulative_final > south_pole_trace.absorbed_cumulative_final + 0.3

    def test_probability_range(self):
        with pytest.raises(DomainError, match="p_right must be"):
            simulate_classical(1.5, 1, 10)
