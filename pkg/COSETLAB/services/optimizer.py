"""
스칼라 최적화 모듈

구간 [lo, hi] 위 1차원 최대화: 균등 격자 → 최적 격자점 주변 황금분할
동률은 작은 x 쪽으로
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from COSETLAB.config import settings
from COSETLAB.core.exceptions import DomainError, OptimizerNonConvergence

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


@dataclass(frozen=True)
class ScalarOptimum:
    x: float
    value: float
    iterations: int
    tolerance: float


def grid_points(lo: float, hi: float, step: float) -> np.ndarray:
    """lo, hi 를 포함하는 간격 step 이하의 균등 격자"""
    if hi <= lo:
        return np.array([lo])
    count = int(math.ceil((hi - lo) / step - 1e-9)) + 1
    return np.linspace(lo, hi, count)


def maximize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    grid_step: float = None,
    tol: float = None,
    max_iter: int = None,
) -> ScalarOptimum:
    """
    격자 탐색 후 황금분할 정밀화

    Args:
        f: 최대화할 함수
        lo, hi: 탐색 구간
        grid_step: 격자 간격 (기본 settings.C1_GRID_STEP)
        tol: 황금분할 종료 구간 폭 (기본 settings.C1_GOLDEN_TOL)
        max_iter: 황금분할 반복 한도 (기본 settings.C1_MAX_ITER)

    Raises:
        OptimizerNonConvergence: 한도 내에 구간 폭이 tol 이하로 줄지 않음
    """
    grid_step = grid_step or settings.C1_GRID_STEP
    tol = tol or settings.C1_GOLDEN_TOL
    max_iter = max_iter or settings.C1_MAX_ITER
    if hi < lo:
        raise DomainError("hi", hi, f"[{lo}, ∞)")

    xs = grid_points(lo, hi, grid_step)
    values = np.array([f(x) for x in xs])
    best = int(np.argmax(values))  # 첫 최댓값 = 가장 작은 x
    best_x, best_value = float(xs[best]), float(values[best])
    if xs.size == 1:
        return ScalarOptimum(best_x, best_value, 0, tol)

    a = float(xs[max(best - 1, 0)])
    b = float(xs[min(best + 1, xs.size - 1)])
    c = a + INV_PHI_SQUARE * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)

    iterations = 0
    while b - a > tol:
        if iterations >= max_iter:
            raise OptimizerNonConvergence(
                "golden-section", iterations,
                best={"x": best_x, "value": best_value, "bracket": [a, b]},
            )
        if fc >= fd:
            b, d, fd = d, c, fc
            c = a + INV_PHI_SQUARE * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        iterations += 1

    for x, value in ((c, fc), (d, fd)):
        if value > best_value or (value == best_value and x < best_x):
            best_x, best_value = float(x), float(value)

    logger.debug(f"황금분할 종료: x={best_x:.9f}, f={best_value:.12f}, 반복 {iterations}회")
    return ScalarOptimum(best_x, best_value, iterations, tol)
