"""
optimizer (격자 + 황금분할) 테스트
"""
import pytest

from COSETLAB.core.exceptions import DomainError, OptimizerNonConvergence
from COSETLAB.services.optimizer import grid_points, maximize_scalar


def test_grid_points_cover_both_ends():
    xs = grid_points(0.0, 0.01, 1e-3)
    assert xs[0] == 0.0 and xs[-1] == 0.01
    assert len(xs) == 11
    assert grid_points(0.2, 0.2, 1e-3).tolist() == [0.2]


def test_interior_peak():
    opt = maximize_scalar(lambda x: -(x - 0.3137) ** 2, 0.0, 1.0, grid_step=1e-2, tol=1e-9)
    assert opt.x == pytest.approx(0.3137, abs=1e-6)
    assert opt.iterations > 0


def test_boundary_maximum_is_kept():
    opt = maximize_scalar(lambda x: x, 0.0, 0.01, grid_step=1e-3, tol=1e-7)
    assert opt.x == 0.01
    assert opt.value == 0.01


def test_ties_go_to_smallest_x():
    opt = maximize_scalar(lambda x: 1.0, 0.0, 1.0, grid_step=0.1, tol=1e-3)
    assert opt.x == 0.0


def test_degenerate_interval():
    opt = maximize_scalar(lambda x: x * x, 0.25, 0.25)
    assert opt.x == 0.25
    assert opt.iterations == 0


def test_iteration_cap_raises_with_best_so_far():
    with pytest.raises(OptimizerNonConvergence) as exc:
        maximize_scalar(lambda x: -(x - 0.5) ** 2, 0.0, 1.0, grid_step=0.1, tol=1e-12, max_iter=2)
    best = exc.value.context["best"]
    assert best["x"] == pytest.approx(0.5, abs=1e-12)
    assert exc.value.exit_code == 70


def test_reversed_interval_rejected():
    with pytest.raises(DomainError):
        maximize_scalar(lambda x: x, 1.0, 0.0)
