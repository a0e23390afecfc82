"""
유한 분포 정보량 계산 모듈

기능:
- 이진 엔트로피 h_b, 이진 합성곱 a*b, 비용 제약 BSC 용량 δh(τ,δ)
- Pmf / JointPmf 값 객체와 엔트로피 / 조건부 엔트로피 / 상호정보량
- 소수체 F_q (q = 2, 3, 5, 7) 연산과 행렬 랭크

모든 정보량은 비트 단위 (log₂), 0·log 0 = 0
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import entr

from COSETLAB.config import settings
from COSETLAB.core.exceptions import (
    AxisError,
    DimensionMismatchError,
    DomainError,
    InvalidDistributionError,
    ModulusMismatchError,
)

logger = logging.getLogger(__name__)

SUPPORTED_FIELDS = (2, 3, 5, 7)

_LN2 = math.log(2.0)

Axes = Union[int, Sequence[int]]


# ============================================
# 스칼라 함수
# ============================================

def check_prob(x: float, name: str = "x") -> float:
    """[0, 1] 범위 확률값 검증"""
    value = float(x)
    if not (0.0 <= value <= 1.0):
        raise DomainError(name, x, "[0, 1]")
    return value


def _entropy_bits(values: np.ndarray) -> float:
    return float(entr(values).sum() / _LN2)


def binary_entropy(x: float) -> float:
    """h_b(x) = −x·log₂x − (1−x)·log₂(1−x)"""
    x = check_prob(x, "x")
    if x == 0.0 or x == 1.0:
        return 0.0
    return _entropy_bits(np.array([x, 1.0 - x]))


def bconv(a: float, b: float) -> float:
    """이진 합성곱 a*b = a(1−b) + (1−a)b"""
    a = check_prob(a, "a")
    b = check_prob(b, "b")
    return a * (1.0 - b) + (1.0 - a) * b


def bsc_capacity_cost(tau: float, delta: float) -> float:
    """
    해밍 비용 τ 제약 BSC(δ) 용량

    δh(τ,δ) = h_b(τ*δ) − h_b(δ)
    """
    return binary_entropy(bconv(tau, delta)) - binary_entropy(delta)


# ============================================
# 분포 값 객체
# ============================================

def _validated_table(values: Iterable[float], what: str) -> np.ndarray:
    table = np.array(values, dtype=float).ravel()
    if table.size == 0:
        raise InvalidDistributionError(f"{what}: 빈 분포")
    if not np.all(np.isfinite(table)):
        raise InvalidDistributionError(f"{what}: 유한하지 않은 값 포함")
    if np.any(table < 0):
        raise InvalidDistributionError(f"{what}: 음수 확률 {table.min()!r}")
    total = table.sum()
    if abs(total - 1.0) > settings.PMF_TOL:
        raise InvalidDistributionError(f"{what}: 합계 {total!r} ≠ 1")
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class Pmf:
    """유한 알파벳 위의 확률 벡터"""
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _validated_table(self.probs, "Pmf"))

    @property
    def size(self) -> int:
        return int(self.probs.size)

    @classmethod
    def bernoulli(cls, p: float) -> "Pmf":
        p = check_prob(p, "p")
        return cls(np.array([1.0 - p, p]))

    @classmethod
    def point_mass(cls, size: int, index: int) -> "Pmf":
        probs = np.zeros(size)
        probs[index] = 1.0
        return cls(probs)

    @classmethod
    def uniform(cls, size: int) -> "Pmf":
        return cls(np.full(size, 1.0 / size))


@dataclass(frozen=True, eq=False)
class JointPmf:
    """
    결합 분포 테이블

    dims: 축별 알파벳 크기, table: 행 우선(사전식) 순서의 평탄화 테이블
    """
    dims: Tuple[int, ...]
    table: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 1 for d in dims):
            raise DimensionMismatchError("JointPmf dims", "모든 축 ≥ 1", dims)
        table = _validated_table(self.table, "JointPmf")
        if table.size != math.prod(dims):
            raise DimensionMismatchError("JointPmf table", math.prod(dims), table.size)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "table", table)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "JointPmf":
        arr = np.asarray(arr, dtype=float)
        return cls(arr.shape, arr.ravel())

    def to_array(self) -> np.ndarray:
        return self.table.reshape(self.dims)


def normalize(values: Iterable[float]) -> Pmf:
    """음이 아닌 가중치를 명시적으로 정규화"""
    arr = np.array(values, dtype=float).ravel()
    if arr.size == 0 or not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise InvalidDistributionError("normalize: 음이 아닌 유한 값이 필요합니다")
    total = arr.sum()
    if total <= 0:
        raise InvalidDistributionError("normalize: 합계가 0입니다")
    return Pmf(arr / total)


# ============================================
# 축 처리 / 주변화
# ============================================

def _as_axes(axes: Optional[Axes]) -> Tuple[int, ...]:
    if axes is None:
        return ()
    if isinstance(axes, (int, np.integer)):
        return (int(axes),)
    return tuple(int(a) for a in axes)


def _check_axes(j: JointPmf, *axis_sets: Tuple[int, ...]) -> None:
    seen = set()
    for axes in axis_sets:
        for a in axes:
            if not 0 <= a < j.ndim:
                raise AxisError(f"축 {a}이(가) 범위 [0, {j.ndim})를 벗어났습니다")
            if a in seen:
                raise AxisError(f"축 {a}이(가) 중복되었습니다")
            seen.add(a)


def _marginal_array(j: JointPmf, axes: Tuple[int, ...]) -> np.ndarray:
    arr = j.to_array()
    drop = tuple(a for a in range(j.ndim) if a not in axes)
    kept = np.sum(arr, axis=drop) if drop else arr
    # 남은 축은 오름차순이므로 요청 순서로 재배치
    order = np.argsort(np.argsort(axes)) if axes else ()
    return np.transpose(kept, order) if axes else np.asarray(kept).reshape(())


def marginal(j: JointPmf, axes: Axes) -> JointPmf:
    """지정한 축 순서의 주변 분포"""
    axes = _as_axes(axes)
    _check_axes(j, axes)
    arr = _marginal_array(j, axes)
    return JointPmf.from_array(arr.reshape(tuple(j.dims[a] for a in axes)))


def with_derived_axis(
    j: JointPmf,
    axes: Axes,
    fn: Callable[..., int],
    size: int,
) -> JointPmf:
    """
    결정적 함수 값 축을 마지막에 추가

    Args:
        j: 원래 결합 분포
        axes: fn 의 인자가 될 축들
        fn: 축 값들 → [0, size) 정수
        size: 새 축의 알파벳 크기

    Returns:
        dims + (size,) 결합 분포
    """
    axes = _as_axes(axes)
    _check_axes(j, axes)
    arr = j.to_array()
    out = np.zeros(arr.shape + (size,))
    for values in np.ndindex(*(j.dims[a] for a in axes)):
        derived = int(fn(*values))
        if not 0 <= derived < size:
            raise DomainError("derived", derived, f"[0, {size})")
        index = [slice(None)] * j.ndim
        for a, v in zip(axes, values):
            index[a] = v
        out[tuple(index) + (derived,)] = arr[tuple(index)]
    return JointPmf.from_array(out)


def with_sum_axis(j: JointPmf, axis_a: int, axis_b: int, q: int) -> JointPmf:
    """U_a ⊕_q U_b 축 추가"""
    _check_field(q)
    for a in (axis_a, axis_b):
        if 0 <= a < j.ndim and j.dims[a] > q:
            raise DimensionMismatchError(f"축 {a} 알파벳", f"≤ {q}", j.dims[a])
    return with_derived_axis(j, (axis_a, axis_b), lambda a, b: (a + b) % q, q)


def embed_axes(j: JointPmf, axes: Axes, q: int) -> JointPmf:
    """이진(또는 더 작은) 축을 F_q 로 확장 (새 심볼 확률 0)"""
    axes = _as_axes(axes)
    _check_axes(j, axes)
    _check_field(q)
    arr = j.to_array()
    for a in axes:
        if arr.shape[a] > q:
            raise DimensionMismatchError(f"축 {a} 알파벳", f"≤ {q}", arr.shape[a])
        pad = [(0, 0)] * arr.ndim
        pad[a] = (0, q - arr.shape[a])
        arr = np.pad(arr, pad)
    return JointPmf.from_array(arr)


# ============================================
# 정보량
# ============================================

def entropy(p: Union[Pmf, JointPmf]) -> float:
    """섀넌 엔트로피 (비트)"""
    values = p.probs if isinstance(p, Pmf) else p.table
    return _entropy_bits(values)


def joint_entropy(j: JointPmf, axes: Axes) -> float:
    axes = _as_axes(axes)
    _check_axes(j, axes)
    return _entropy_bits(_marginal_array(j, axes).ravel())


def cond_entropy(j: JointPmf, target_axes: Axes, given_axes: Optional[Axes] = None) -> float:
    """
    H(T|G) = −Σ p(t,g) log₂ p(t,g)/p(g)

    전체 테이블 위에서 직접 합산
    """
    target = _as_axes(target_axes)
    given = _as_axes(given_axes)
    _check_axes(j, target, given)
    p_tg = _marginal_array(j, target + given)
    p_g = _marginal_array(j, given)
    # p_g 를 target 축 방향으로 브로드캐스트
    p_g = p_g.reshape((1,) * len(target) + p_g.shape)
    mask = p_tg > 0
    ratio = np.divide(p_tg, np.broadcast_to(p_g, p_tg.shape), out=np.ones_like(p_tg), where=mask)
    value = -float(np.sum(p_tg[mask] * np.log2(ratio[mask])))
    return max(value, 0.0)


def mutual_info(j: JointPmf, axes_a: Axes, axes_b: Axes) -> float:
    """I(A;B) = H(A) + H(B) − H(A,B)"""
    a = _as_axes(axes_a)
    b = _as_axes(axes_b)
    _check_axes(j, a, b)
    value = joint_entropy(j, a) + joint_entropy(j, b) - joint_entropy(j, a + b)
    return max(value, 0.0)


def cond_mutual_info(j: JointPmf, axes_a: Axes, axes_b: Axes, axes_c: Axes) -> float:
    """I(A;B|C) = H(A|C) + H(B|C) − H(A,B|C)"""
    a = _as_axes(axes_a)
    b = _as_axes(axes_b)
    c = _as_axes(axes_c)
    _check_axes(j, a, b, c)
    value = cond_entropy(j, a, c) + cond_entropy(j, b, c) - cond_entropy(j, a + b, c)
    return max(value, 0.0)


# ============================================
# 소수체 F_q
# ============================================

def _check_field(q: int) -> int:
    if q not in SUPPORTED_FIELDS:
        raise ModulusMismatchError(q)
    return q


@dataclass(frozen=True)
class FieldElem:
    """F_q 원소"""
    q: int
    v: int

    def __post_init__(self):
        _check_field(self.q)
        if not 0 <= self.v < self.q:
            raise DomainError("v", self.v, f"[0, {self.q})")

    def __str__(self) -> str:
        return f"{self.v} (mod {self.q})"


def _same_field(a: FieldElem, b: FieldElem) -> int:
    if a.q != b.q:
        raise ModulusMismatchError(a.q, b.q)
    return a.q


def fq_add(a: FieldElem, b: FieldElem) -> FieldElem:
    q = _same_field(a, b)
    return FieldElem(q, (a.v + b.v) % q)


def fq_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    q = _same_field(a, b)
    return FieldElem(q, (a.v * b.v) % q)


def fq_neg(a: FieldElem) -> FieldElem:
    return FieldElem(a.q, (-a.v) % a.q)


def fq_sub(a: FieldElem, b: FieldElem) -> FieldElem:
    return fq_add(a, fq_neg(b))


def fq_inv(a: FieldElem) -> FieldElem:
    """곱셈 역원 (페르마 소정리)"""
    if a.v == 0:
        raise DomainError("a", 0, f"F_{a.q} \\ {{0}}")
    return FieldElem(a.q, pow(a.v, a.q - 2, a.q))


def fq_rank(matrix: np.ndarray, q: int) -> int:
    """F_q 위 가우스 소거로 행렬 랭크 계산"""
    _check_field(q)
    m = np.array(matrix, dtype=np.int64) % q
    if m.ndim != 2:
        raise DimensionMismatchError("행렬", "2차원", m.ndim)
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(m[rank:, col])[0]
        if pivots.size == 0:
            continue
        pivot = rank + pivots[0]
        m[[rank, pivot]] = m[[pivot, rank]]
        m[rank] = (m[rank] * pow(int(m[rank, col]), q - 2, q)) % q
        others = np.arange(rows) != rank
        m[others] = (m[others] - np.outer(m[others, col], m[rank])) % q
        rank += 1
    return rank
