import math
import time

import numpy as np
# noinspection PyPackageRequirements
import pytest

from src.core.bloch_state import BlochState
from src.core.constants import INFINITY, EscapeMethod
from src.spectral.escape_prob import (XI_TABLE, escape_closed_array, escape_prob, escape_prob_closed,
                                      escape_prob_m1, escape_prob_quadrature, escape_prob_quadrature_result,
                                      measure_constant, xi_table)
from src.utils.errors import DomainError
from src.walk.walk_config import WalkConfig
from src.walk.walk_sim import run_many
from test.test_base import A, TestBase

NORTH = BlochState(0.0, 0.0)
SOUTH = BlochState(math.pi, 0.0)
EQUATOR = BlochState(math.pi / 2, 0.0)


class TestXiTable(TestBase):
    def test_constants(self):
        assert xi_table(1).xi1 == 1 - 2 / math.pi
        assert xi_table(1).xi3 == 2 - 4 / math.pi
        m3 = xi_table("3")
        assert (m3.xi1, m3.xi2, m3.xi3) == (4 - 10 / math.pi, 13 - 118 / (3 * math.pi), 11 - 100 / (3 * math.pi))
        inf = xi_table("inf")
        assert (inf.xi1, inf.xi2, inf.xi3) == (1.5 - 2 / math.pi, 0.5, 1 - 2 / math.pi)

    def test_unsupported(self):
        with pytest.raises(DomainError, match="use escape_prob_quadrature"):
            xi_table(6)
        with pytest.raises(DomainError, match="M must be"):
            xi_table(0)

    def test_trend_towards_infinity(self):
        limit = XI_TABLE[INFINITY]
        for name in ("xi1", "xi2", "xi3"):
            gaps = [abs(getattr(XI_TABLE[m], name) - getattr(limit, name)) for m in (2, 3, 4, 5)]
            assert gaps == sorted(gaps, reverse=True)
        xi1 = [XI_TABLE[m].xi1 for m in (2, 3, 4, 5)]
        assert xi1 == sorted(xi1)

    def test_as_dict(self):
        assert xi_table(INFINITY).as_dict()["m"] == "inf"


class TestEscapeClosed(TestBase):
    def test_examples(self):
        assert escape_prob_closed(BlochState.of("pi/2", "pi"), 1) == 0.0
        for beta in (0.0, 1.0, 3.0):
            assert escape_prob_closed(BlochState(math.pi, beta), INFINITY) == pytest.approx(0.5, abs=1e-12)
        assert escape_prob_closed(EQUATOR, 2) == pytest.approx(4 - 10 / math.pi, abs=1e-12)
        assert escape_prob_closed(NORTH, 1) == pytest.approx(A, abs=1e-15)

    def test_m1_identity(self):
        for alpha in np.linspace(0.0, math.pi, 50):
            for beta in np.linspace(0.0, 2 * math.pi, 50, endpoint=False):
                state = BlochState(alpha, beta)
                expected = (1 - 2 / math.pi) * (1 + math.sin(alpha) * math.cos(beta))
                assert escape_prob_closed(state, 1) == pytest.approx(expected, abs=1e-12)
                assert escape_prob_m1(state) == pytest.approx(expected, abs=1e-12)

    def test_range(self):
        alpha, beta = np.meshgrid(np.linspace(0.0, math.pi, 100), np.linspace(0.0, 2 * math.pi, 100))
        for m in self.all_placements:
            values = escape_closed_array(alpha, beta, m)
            assert np.all(values >= 0.0) and np.all(values <= 1.0)

    def test_symmetries(self):
        for state in self.random_states(200, interior=False):
            for m in self.all_placements:
                assert escape_prob_closed(state, m) == pytest.approx(escape_prob_closed(state.mirror, m), abs=1e-14)
            flipped = BlochState(math.pi - state.alpha, state.beta)
            assert escape_prob_closed(state, 1) == pytest.approx(escape_prob_closed(flipped, 1), abs=1e-14)

    def test_array_matches_scalar(self):
        states = self.random_states(20, interior=False)
        alpha = np.array([s.alpha for s in states])
        beta = np.array([s.beta for s in states])
        for m in self.all_placements:
            values = escape_closed_array(alpha, beta, m)
            assert np.allclose(values, [escape_prob_closed(s, m) for s in states], atol=1e-15)


class TestEscapeQuadrature(TestBase):
    def test_measure_constant(self):
        assert measure_constant() == pytest.approx(1 / (2 * math.pi), abs=1e-9)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, INFINITY])
    def test_reproduces_table(self, m):
        xi = xi_table(m)
        start = time.perf_counter()
        xi1 = escape_prob_quadrature(NORTH, m)
        xi2 = escape_prob_quadrature(SOUTH, m)
        xi3 = 2 * escape_prob_quadrature(EQUATOR, m) - xi1 - xi2
        assert time.perf_counter() - start < 3.0
        assert xi1 == pytest.approx(xi.xi1, abs=1e-6)
        assert xi2 == pytest.approx(xi.xi2, abs=1e-6)
        assert xi3 == pytest.approx(xi.xi3, abs=1e-6)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_matches_closed_on_grid(self, m):
        for alpha in np.linspace(0.0, math.pi, 9):
            for beta in np.linspace(0.0, 2 * math.pi, 9, endpoint=False):
                state = BlochState(alpha, beta)
                assert escape_prob_quadrature(state, m) == pytest.approx(escape_prob_closed(state, m), abs=1e-6)

    @pytest.mark.parametrize("rho", [0.3, 0.7, 0.9])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_general_rho_matches_simulation(self, rho, m):
        states = [NORTH, SOUTH, EQUATOR, BlochState(math.pi / 4, math.pi / 3), BlochState(2.0, 5.0)]
        traces = run_many(WalkConfig(rho=rho, boundary_m=m, max_steps=20_000), states)
        for state, trace in zip(states, traces):
            assert escape_prob_quadrature(state, m, rho) == pytest.approx(trace.escape_estimate, abs=1e-3)

    def test_m1_zero(self):
        assert escape_prob_quadrature(BlochState.of("pi/2", "pi"), 1) == pytest.approx(0.0, abs=1e-9)

    def test_beyond_the_table(self):
        value = escape_prob_quadrature(NORTH, 6)
        assert XI_TABLE[5].xi1 < value < XI_TABLE[INFINITY].xi1

    def test_result_record(self):
        result = escape_prob_quadrature_result(EQUATOR, 2)
        assert result.method is EscapeMethod.QUADRATURE
        assert result.m == 2
        assert 0.0 <= result.tolerance <= 1e-9
        assert result.as_dict()["method"] == "quadrature"


class TestEscapeProb(TestBase):
    def test_methods(self):
        state = BlochState(1.0, 2.0)
        closed = escape_prob(state, 2)
        assert closed.method is EscapeMethod.CLOSED and closed.tolerance == 0.0
        quadrature = escape_prob(state, 2, EscapeMethod.QUADRATURE)
        assert quadrature.value == pytest.approx(closed.value, abs=1e-6)
        simulated = escape_prob(state, 2, EscapeMethod.SIMULATE, max_steps=2_000)
        assert simulated.method is EscapeMethod.SIMULATE
        assert simulated.value >= closed.value - 1e-9
        assert simulated.value == pytest.approx(closed.value, abs=5e-2)
        assert simulated.tolerance > 0.0

    def test_errors(self):
        with pytest.raises(DomainError, match="Closed forms exist only for rho = 0.5"):
            escape_prob(NORTH, 1, EscapeMethod.CLOSED, rho=0.3)
        with pytest.raises(DomainError, match="finite M"):
            escape_prob(NORTH, INFINITY, EscapeMethod.SIMULATE)
        with pytest.raises(DomainError, match="M must be equal to or greater than 1"):
            escape_prob(NORTH, 0)
