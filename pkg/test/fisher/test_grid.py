import json
import math

import numpy as np
# noinspection PyPackageRequirements
import pytest

from src.core.constants import INFINITY, Quantity
from src.fisher.grid import Grid, grid_axes, grid_scan
from src.utils.errors import DomainError
from test.test_base import A, TestBase


class TestGridAxes(TestBase):
    def test_offset_axes_avoid_degenerate_lines(self):
        for n in (4, 5, 64, 99):
            alpha, beta = grid_axes(n, n)
            assert alpha.size == beta.size == n
            assert np.all(alpha > 0.0) and np.all(alpha < math.pi)
            assert np.all(beta > 0.0) and np.all(beta < 2 * math.pi)
            assert not np.any(np.isclose(beta, math.pi, atol=1e-12))

    def test_inclusive_axes(self):
        alpha, beta = grid_axes(3, 4, offset=False)
        assert alpha.tolist() == [0.0, math.pi / 2, math.pi]
        assert beta[0] == 0.0 and beta[2] == pytest.approx(math.pi)
        assert beta[-1] < 2 * math.pi

    def test_resolution(self):
        with pytest.raises(DomainError, match="n_alpha must be equal to or greater than 2"):
            grid_axes(1, 10)


class TestGridScan(TestBase):
    def test_escape_corners(self):
        grid = grid_scan(1, Quantity.P_E, 3, 3, offset=False)
        assert grid.shape == (3, 3)
        assert grid.values[0, 0] == pytest.approx(A, abs=1e-12)
        assert grid.values[0, 1] == pytest.approx(2 * A, abs=1e-12)
        assert np.all(grid.tags == "regular")

    def test_phase_information_rows(self):
        grid = grid_scan(1, "F_beta", 8, 8, offset=False)
        assert grid.beta_axis[0] == 0.0 and grid.beta_axis[4] == pytest.approx(math.pi)
        assert np.all(grid.row(0) == 0.0)
        assert np.all(np.abs(grid.row(4)) < 1e-20)

    def test_degenerate_cell_is_resolved(self):
        grid = grid_scan(1, Quantity.F_BETA, 3, 2, offset=False)
        assert grid.tags[1, 1] == "limit"
        assert grid.values[1, 1] == pytest.approx(2 * A, abs=1e-4)
        assert np.all(grid.finite_mask)

    def test_undefined_efficiency_on_poles(self):
        grid = grid_scan(2, Quantity.ETA_BETA, 5, 4, offset=False)
        assert np.all(grid.tags[:, 0] == "undefined")
        assert np.all(grid.tags[:, -1] == "undefined")
        assert np.all(np.isnan(grid.column(0)))

    @pytest.mark.parametrize("m", [1, 2, INFINITY])
    def test_efficiency_never_exceeds_one(self, m):
        for quantity in (Quantity.ETA_ALPHA, Quantity.ETA_BETA):
            grid = grid_scan(m, quantity, 100, 100)
            finite = grid.values[grid.finite_mask]
            assert finite.size > 0
            assert np.all(finite <= 1.0 + 1e-9)

    def test_determinant_field(self):
        grid = grid_scan(None, Quantity.DET_F_TOT, 30, 30, placements=(1, 2))
        assert grid.m is None
        assert grid.placements == (1, 2)
        assert np.nanmin(grid.values) > -1e-9
        assert np.nanmax(grid.values) > 0.0

    def test_cap(self):
        grid = grid_scan(1, Quantity.F_BETA, 40, 40, cap_percentile=99.0)
        cap = grid.cap_value
        assert cap == pytest.approx(float(np.percentile(grid.values[grid.finite_mask], 99.0)))
        assert np.nanmax(grid.display()) == pytest.approx(cap)
        assert np.nanmax(grid.values) >= cap
        assert grid_scan(1, Quantity.F_BETA, 10, 10).cap_value is None

    def test_unknown_quantity(self):
        with pytest.raises(ValueError, match="is not a valid Quantity"):
            grid_scan(1, "F_gamma", 10, 10)


class TestGridSerialization(TestBase):
    def test_csv(self):
        grid = grid_scan(2, Quantity.F_ALPHA, 12, 10, cap_percentile=95.0)
        text = grid.to_csv()
        lines = text.splitlines()
        assert lines[0] == "alpha,beta,value,tag,display"
        assert len(lines) == 1 + 12 * 10
        restored = Grid.from_csv(text, "F_alpha", m=2, cap_percentile=95.0)
        assert restored.same_as(grid)
        assert restored.cap_value == grid.cap_value

    def test_csv_with_nan(self):
        grid = grid_scan(2, Quantity.ETA_BETA, 5, 4, offset=False)
        restored = Grid.from_csv(grid.to_csv(), Quantity.ETA_BETA, m=2, offset=False)
        assert restored.same_as(grid)

    def test_csv_errors(self):
        with pytest.raises(ValueError, match="no data rows"):
            Grid.from_csv("alpha,beta,value,tag\n", Quantity.P_E)
        text = grid_scan(1, Quantity.P_E, 3, 3).to_csv()
        with pytest.raises(ValueError, match="expected 9"):
            Grid.from_csv(text + text.splitlines()[1] + "\n", Quantity.P_E)

    def test_dict(self):
        grid = grid_scan(INFINITY, Quantity.ETA_BETA, 6, 6, offset=False, cap_percentile=90.0)
        envelope = json.loads(json.dumps(grid.as_dict()))
        assert envelope["m"] == "inf"
        assert envelope["values"][0][0] is None
        assert "display" in envelope
        assert Grid.from_dict(envelope).same_as(grid)

    def test_shape_checks(self):
        alpha, beta = grid_axes(3, 3)
        with pytest.raises(ValueError, match="must be"):
            Grid(Quantity.P_E, alpha, beta, np.zeros((2, 3)), np.full((2, 3), "regular", dtype=object))
        with pytest.raises(ValueError, match="alpha axis must be strictly increasing"):
            Grid(Quantity.P_E, alpha[::-1], beta, np.zeros((3, 3)), np.full((3, 3), "regular", dtype=object))
