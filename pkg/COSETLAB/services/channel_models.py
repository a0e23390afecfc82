"""
채널 모델 모듈

기능:
- 예제 1~5 채널의 전이 테이블 생성
- 입력 분포 곱으로 (입력, 상태, 출력) 결합 분포 구성
- 채널 파일 (JSON, 10진 문자열 확률) 저장 / 로드

행 순서는 (입력..., 상태...) 사전식, 첫 축이 가장 느리게 변함
"""
import json
import logging
import math
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from COSETLAB.config import settings
from COSETLAB.core.exceptions import (
    ChannelParseError,
    DimensionMismatchError,
    DomainError,
    InvalidDistributionError,
)
from COSETLAB.schemas.channel import ChannelFile, CostFnFile
from COSETLAB.services.finite_math import JointPmf, Pmf, bconv, check_prob
from COSETLAB.utils.parsing import decimal_to_float, float_to_decimal

logger = logging.getLogger(__name__)

# 예제 2 MAC(y₁=0 | x₁, x₂∨x₃)
EX2_MAC_ZERO = {
    (0, 0): "0.989",
    (0, 1): "0.01",
    (1, 0): "0.02",
    (1, 1): "0.993",
}

# 예제 5 W(y=0 | x₁x₂s₁s₂), 사전식 순서
TABLE_I_ZERO = (
    "0.92", "0.07", "0.06", "0.96",
    "0.10", "0.88", "0.95", "0.11",
    "0.08", "0.92", "0.94", "0.10",
    "0.92", "0.08", "0.06", "0.91",
)


@dataclass(frozen=True)
class CostFn:
    """입력 단자 terminal 의 알파벳 위 비용 κ(x) ≥ 0"""
    terminal: int
    table: Tuple[float, ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.table, dtype=float)


@dataclass(frozen=True, eq=False)
class ChannelModel:
    """
    유한 알파벳 전이 테이블 W(출력 | 입력, 상태)

    W 는 (행 = 입력·상태 조합, 열 = 출력 조합) 2차원 배열
    """
    name: str
    input_dims: Tuple[int, ...]
    state_dims: Tuple[int, ...]
    output_dims: Tuple[int, ...]
    W: np.ndarray
    cost_fns: Tuple[CostFn, ...] = ()
    cost_budgets: Tuple[float, ...] = ()
    state_law: Optional[np.ndarray] = None
    params: Dict[str, object] = field(default_factory=dict)
    # 파일에서 읽은 10진 문자열 (있으면 저장 시 그대로 사용)
    decimal_rows: Optional[Tuple[Tuple[str, ...], ...]] = None

    def __post_init__(self):
        W = np.array(self.W, dtype=float)
        n_rows = math.prod(self.input_dims) * math.prod(self.state_dims)
        n_cols = math.prod(self.output_dims)
        if W.shape != (n_rows, n_cols):
            raise DimensionMismatchError("W", (n_rows, n_cols), W.shape)
        if np.any(W < 0) or not np.all(np.isfinite(W)):
            raise InvalidDistributionError(f"{self.name}: W 에 음수 또는 비유한 값이 있습니다")
        sums = W.sum(axis=1)
        bad = np.nonzero(np.abs(sums - 1.0) > settings.CHANNEL_ROW_TOL)[0]
        if bad.size:
            raise InvalidDistributionError(
                f"{self.name}: 행 {int(bad[0])} 합계 {sums[bad[0]]!r} ≠ 1"
            )
        W.setflags(write=False)
        object.__setattr__(self, "W", W)

        if len(self.cost_fns) != len(self.cost_budgets):
            raise DimensionMismatchError("cost_budgets", len(self.cost_fns), len(self.cost_budgets))
        for fn, budget in zip(self.cost_fns, self.cost_budgets):
            if not 0 <= fn.terminal < len(self.input_dims):
                raise DimensionMismatchError("cost terminal", f"[0, {len(self.input_dims)})", fn.terminal)
            if len(fn.table) != self.input_dims[fn.terminal]:
                raise DimensionMismatchError("cost table", self.input_dims[fn.terminal], len(fn.table))
            if min(fn.table) < 0:
                raise DomainError("cost", min(fn.table), "[0, ∞)")
            if not 0 <= budget <= max(fn.table):
                raise DomainError("budget", budget, f"[0, {max(fn.table)}]")

        if self.state_dims:
            law = self.state_law
            if law is None:
                law = np.full(math.prod(self.state_dims), 1.0 / math.prod(self.state_dims))
            law = Pmf(law).probs
            if law.size != math.prod(self.state_dims):
                raise DimensionMismatchError("state_law", math.prod(self.state_dims), law.size)
            object.__setattr__(self, "state_law", law)
        elif self.state_law is not None:
            raise DimensionMismatchError("state_law", "없음 (상태 없는 채널)", "지정됨")

    @property
    def n_inputs(self) -> int:
        return len(self.input_dims)

    def W_array(self) -> np.ndarray:
        """W 를 (입력..., 상태..., 출력...) 다차원 배열로"""
        return self.W.reshape(self.input_dims + self.state_dims + self.output_dims)

    def with_budgets(self, budgets: Sequence[float]) -> "ChannelModel":
        return ChannelModel(
            name=self.name,
            input_dims=self.input_dims,
            state_dims=self.state_dims,
            output_dims=self.output_dims,
            W=self.W,
            cost_fns=self.cost_fns,
            cost_budgets=tuple(float(b) for b in budgets),
            state_law=self.state_law,
            params=dict(self.params),
            decimal_rows=self.decimal_rows,
        )


# ============================================
# 빌더 보조 함수
# ============================================

def _check_crossover(delta: float, name: str) -> float:
    delta = check_prob(delta, name)
    if delta > 0.5:
        raise DomainError(name, delta, "[0, 0.5]")
    return delta


def bsc(delta: float) -> np.ndarray:
    """BSC(δ) 2×2 커널 [x, y]"""
    delta = check_prob(delta, "delta")
    return np.array([[1.0 - delta, delta], [delta, 1.0 - delta]])


def mac_or_coupling(mac_table: np.ndarray) -> np.ndarray:
    """MAC(y₁ | x₁, s) → [x₁, x₂, x₃, y₁] 테이블 (s = x₂ ∨ x₃)"""
    mac = np.asarray(mac_table, dtype=float)
    out = np.empty((2, 2, 2, 2))
    for x2 in range(2):
        for x3 in range(2):
            out[:, x2, x3, :] = mac[:, x2 | x3, :]
    return out


def _mac_from_zero_probs(zero_probs: Dict[Tuple[int, int], Union[str, float]]) -> np.ndarray:
    mac = np.empty((2, 2, 2))
    for (x1, s), p0 in zero_probs.items():
        p0 = Decimal(str(p0))
        mac[x1, s] = [float(p0), float(Decimal(1) - p0)]
    return mac


def _hamming_costs(n_terminals: int) -> Tuple[CostFn, ...]:
    return tuple(CostFn(terminal=t, table=(0.0, 1.0)) for t in range(n_terminals))


def _three_user_model(name: str, W6: np.ndarray, budgets: Sequence[float], params: dict) -> ChannelModel:
    return ChannelModel(
        name=name,
        input_dims=(2, 2, 2),
        state_dims=(),
        output_dims=(2, 2, 2),
        W=W6.reshape(8, 8),
        cost_fns=_hamming_costs(3),
        cost_budgets=tuple(float(b) for b in budgets),
        params=params,
    )


# ============================================
# 예제 채널
# ============================================

def _ex1_table(delta1: float, delta2: float, delta3: float) -> np.ndarray:
    b1, b2, b3 = bsc(delta1), bsc(delta2), bsc(delta3)
    W6 = np.empty((2, 2, 2, 2, 2, 2))
    for x1, x2, x3 in np.ndindex(2, 2, 2):
        flip = x1 ^ (x2 | x3)
        W6[x1, x2, x3] = np.einsum("a,b,c->abc", b1[flip], b2[x2], b3[x3])
    return W6


def make_ex1(
    delta1: float,
    delta2: float,
    delta3: float,
    budgets: Sequence[float] = (0.5, 0.5, 0.5),
) -> ChannelModel:
    """
    예제 1: 3-to-1 OR 간섭 채널

    W = BSC_δ₁(y₁|x₁⊕(x₂∨x₃))·BSC_δ₂(y₂|x₂)·BSC_δ₃(y₃|x₃)
    """
    delta1 = _check_crossover(delta1, "delta1")
    delta2 = _check_crossover(delta2, "delta2")
    delta3 = _check_crossover(delta3, "delta3")
    W6 = _ex1_table(delta1, delta2, delta3)
    return _three_user_model(
        "example1", W6, budgets,
        {"delta1": delta1, "delta2": delta2, "delta3": delta3},
    )


def ex2_xor_table(delta1: float) -> np.ndarray:
    """예제 1의 가산 MAC 을 예제 2 형식 MAC[x₁, s, y₁] 으로"""
    delta1 = _check_crossover(delta1, "delta1")
    mac = np.empty((2, 2, 2))
    for x1, s in np.ndindex(2, 2):
        mac[x1, s] = bsc(delta1)[x1 ^ s]
    return mac


def make_ex2(
    mac_table: Optional[np.ndarray] = None,
    delta: float = 0.067,
    budgets: Sequence[float] = (0.5, 0.5, 0.5),
) -> ChannelModel:
    """
    예제 2: 비가산 MAC 결합

    W = MAC(y₁|x₁, x₂∨x₃)·BSC_δ(y₂|x₂)·BSC_δ(y₃|x₃)

    Args:
        mac_table: [x₁, s, y₁] 2×2×2 배열 (None 이면 기본 MAC)
        delta: 사용자 2, 3 BSC 교차확률
    """
    delta = _check_crossover(delta, "delta")
    mac = _mac_from_zero_probs(EX2_MAC_ZERO) if mac_table is None else np.array(mac_table, dtype=float)
    if mac.shape != (2, 2, 2):
        raise DimensionMismatchError("mac_table", (2, 2, 2), mac.shape)
    if np.any(mac < 0) or np.any(np.abs(mac.sum(axis=2) - 1.0) > settings.CHANNEL_ROW_TOL):
        raise InvalidDistributionError("mac_table 의 각 행은 합이 1인 확률이어야 합니다")

    coupled = mac_or_coupling(mac)
    b = bsc(delta)
    W6 = np.einsum("ijka,jb,kc->ijkabc", coupled, b, b)
    return _three_user_model("example2", W6, budgets, {"delta": delta, "mac_table": mac.tolist()})


def make_ex3(
    beta: float,
    delta: float,
    budgets: Sequence[float] = (0.5, 0.5, 0.5),
) -> ChannelModel:
    """
    예제 3: 3-사용자 AND/OR 간섭 채널

    P(Y_j=1|x) = (x_j·β * δ) * (x_i ∨ x_k), 세 출력은 x 가 주어지면 독립
    """
    beta = _check_crossover(beta, "beta")
    delta = _check_crossover(delta, "delta")
    W6 = np.empty((2, 2, 2, 2, 2, 2))
    for x in np.ndindex(2, 2, 2):
        legs = []
        for j in range(3):
            i, k = [m for m in range(3) if m != j]
            p1 = bconv(bconv(x[j] * beta, delta), float(x[i] | x[k]))
            legs.append(np.array([1.0 - p1, p1]))
        W6[x] = np.einsum("a,b,c->abc", *legs)
    return _three_user_model("example3", W6, budgets, {"beta": beta, "delta": delta})


def make_ex4(
    delta1: float,
    delta: float,
    budgets: Sequence[float] = (0.5, 0.5, 0.5),
) -> ChannelModel:
    """
    예제 4: 3-사용자 방송 채널

    예제 1 과 같은 W, 단일 8진 입력 x = x₁x₂x₃ 와 자릿수별 비용 κ_j(x) = 1{x_j=1}
    """
    delta1 = _check_crossover(delta1, "delta1")
    delta = _check_crossover(delta, "delta")
    W6 = _ex1_table(delta1, delta, delta)
    costs = tuple(
        CostFn(terminal=0, table=tuple(float((x >> (2 - j)) & 1) for x in range(8)))
        for j in range(3)
    )
    return ChannelModel(
        name="example4",
        input_dims=(8,),
        state_dims=(),
        output_dims=(2, 2, 2),
        W=W6.reshape(8, 8),
        cost_fns=costs,
        cost_budgets=tuple(float(b) for b in budgets),
        params={"delta1": delta1, "delta": delta},
    )


def make_ex5(tau: float = 0.5) -> ChannelModel:
    """
    예제 5: 송신단 분산 상태 MAC (MAC-DSTx)

    Table I 의 W(0|x₁x₂s₁s₂), 균등 독립 상태, 비용 κ_j(x_j, s_j) = x_j
    """
    tau = check_prob(tau, "tau")
    rows = tuple((p0, str(Decimal(1) - Decimal(p0))) for p0 in TABLE_I_ZERO)
    return ChannelModel(
        name="example5",
        input_dims=(2, 2),
        state_dims=(2, 2),
        output_dims=(2,),
        W=np.array([[float(a), float(b)] for a, b in rows]),
        cost_fns=_hamming_costs(2),
        cost_budgets=(tau, tau),
        state_law=np.full(4, 0.25),
        decimal_rows=rows,
    )


# ============================================
# 결합 분포
# ============================================

def joint_distribution(
    ch: ChannelModel,
    input_laws: Sequence[Pmf],
    state_law: Optional[Pmf] = None,
) -> JointPmf:
    """
    p(입력, 상태, 출력) = ∏ p_{X_j} · W_S · W

    상태 있는 채널에서 state_law 를 생략하면 채널의 상태 분포 사용
    """
    if len(input_laws) != ch.n_inputs:
        raise DimensionMismatchError("input_laws", ch.n_inputs, len(input_laws))
    row_law = np.ones(())
    for j, law in enumerate(input_laws):
        if law.size != ch.input_dims[j]:
            raise DimensionMismatchError(f"input_laws[{j}]", ch.input_dims[j], law.size)
        row_law = np.multiply.outer(row_law, law.probs)

    if ch.state_dims:
        states = ch.state_law if state_law is None else state_law.probs
        if states.size != math.prod(ch.state_dims):
            raise DimensionMismatchError("state_law", math.prod(ch.state_dims), states.size)
        row_law = np.multiply.outer(row_law, states)
    elif state_law is not None:
        raise DimensionMismatchError("state_law", "없음 (상태 없는 채널)", "지정됨")

    joint = row_law.reshape(-1, 1) * ch.W
    return JointPmf(ch.input_dims + ch.state_dims + ch.output_dims, joint.ravel())


# ============================================
# 채널 파일
# ============================================

def channel_to_file(ch: ChannelModel) -> ChannelFile:
    if ch.decimal_rows is not None:
        rows = [list(r) for r in ch.decimal_rows]
    else:
        rows = [[float_to_decimal(p) for p in row] for row in ch.W]
    return ChannelFile(
        name=ch.name,
        input_dims=list(ch.input_dims),
        state_dims=list(ch.state_dims),
        output_dims=list(ch.output_dims),
        rows=rows,
        cost_fns=[
            CostFnFile(terminal=fn.terminal, table=[float_to_decimal(c) for c in fn.table])
            for fn in ch.cost_fns
        ],
        cost_budgets=[float_to_decimal(b) for b in ch.cost_budgets],
        state_law=[float_to_decimal(p) for p in ch.state_law] if ch.state_law is not None else None,
    )


def channel_to_json(ch: ChannelModel) -> str:
    return json.dumps(channel_to_file(ch).model_dump(), indent=2, ensure_ascii=False) + "\n"


def dump_channel(ch: ChannelModel, path: Union[str, Path]) -> Path:
    """채널을 JSON 파일로 저장"""
    path = Path(path)
    path.write_text(channel_to_json(ch), encoding="utf-8")
    logger.info(f"✅ 채널 저장: {ch.name} → {path}")
    return path


def _decimal_list(values: List[str], what: str, row: Optional[int] = None) -> List[float]:
    out = []
    for col, text in enumerate(values):
        value = decimal_to_float(text)
        if value is None:
            raise ChannelParseError(f"{what}: 10진수가 아닙니다 {text!r}", row=row, column=col)
        out.append(value)
    return out


def channel_from_file(doc: ChannelFile) -> ChannelModel:
    n_cols = math.prod(doc.output_dims)
    W = []
    for r, row in enumerate(doc.rows):
        if len(row) != n_cols:
            raise ChannelParseError(f"열 개수 {len(row)} ≠ {n_cols}", row=r)
        W.append(_decimal_list(row, "rows", row=r))

    cost_fns = tuple(
        CostFn(terminal=fn.terminal, table=tuple(_decimal_list(fn.table, "cost_fns")))
        for fn in doc.cost_fns
    )
    return ChannelModel(
        name=doc.name,
        input_dims=tuple(doc.input_dims),
        state_dims=tuple(doc.state_dims),
        output_dims=tuple(doc.output_dims),
        W=np.array(W, dtype=float).reshape(len(W), n_cols),
        cost_fns=cost_fns,
        cost_budgets=tuple(_decimal_list(doc.cost_budgets, "cost_budgets")),
        state_law=np.array(_decimal_list(doc.state_law, "state_law")) if doc.state_law is not None else None,
        decimal_rows=tuple(tuple(row) for row in doc.rows),
    )


def load_channel(path: Union[str, Path]) -> ChannelModel:
    """
    JSON 채널 파일 로드 및 검증

    Raises:
        ChannelParseError: JSON / 스키마 / 10진수 형식 오류 (행·열 위치 포함)
        InvalidDistributionError: 행 합계가 1e-9 이상 어긋남
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ChannelParseError(e.msg, row=e.lineno, column=e.colno)
    except OSError as e:
        raise ChannelParseError(f"파일을 읽을 수 없습니다: {e}")

    try:
        doc = ChannelFile.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        loc = [p for p in first["loc"] if isinstance(p, int)]
        raise ChannelParseError(
            f"{'.'.join(str(p) for p in first['loc'])}: {first['msg']}",
            row=loc[0] if loc else None,
            column=loc[1] if len(loc) > 1 else None,
        )

    ch = channel_from_file(doc)
    logger.info(f"✅ 채널 로드: {ch.name} ({path})")
    return ch
