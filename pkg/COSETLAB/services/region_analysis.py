"""
전송률 영역 판정 모듈

기능:
- 예제 1/4 명제 조건 (iid 불가능성, 코셋 달성 가능성) 과 θ
- 예제 2 의 C₁ 최적화와 명제 3 의 두 간격
- 삼진 임베딩 위 합 복호 여유분과 예제 3 동시 달성 판정

모든 리포트의 margin 은 조건이 성립하는 방향이 양수
"""
import logging
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from COSETLAB.config import settings
from COSETLAB.core.exceptions import DomainError, InvalidDistributionError
from COSETLAB.schemas.report import (
    C1Result,
    PropositionReport,
    ReceiverCheck,
    SimultaneityReport,
)
from COSETLAB.services.channel_models import (
    ChannelModel,
    joint_distribution,
    make_ex1,
    make_ex2,
    make_ex3,
)
from COSETLAB.services.finite_math import (
    JointPmf,
    Pmf,
    bconv,
    binary_entropy,
    bsc_capacity_cost,
    cond_entropy,
    cond_mutual_info,
    embed_axes,
    entropy,
    joint_entropy,
    marginal,
    mutual_info,
    with_derived_axis,
    with_sum_axis,
)
from COSETLAB.services.optimizer import maximize_scalar

logger = logging.getLogger(__name__)

# 3-사용자 결합 분포 축: X₁ X₂ X₃ Y₁ Y₂ Y₃
X_AXES = (0, 1, 2)
Y_AXES = (3, 4, 5)


@dataclass(frozen=True)
class IcParams:
    """예제 1/4 파라미터 (τ₁, τ=τ₂=τ₃, δ₁, δ=δ₂=δ₃)"""
    tau1: float
    tau: float
    delta1: float
    delta: float

    @property
    def beta(self) -> float:
        """β = δ₁ * (2τ − τ²)"""
        return bconv(self.delta1, 2 * self.tau - self.tau ** 2)


def _require_open(name: str, value: float, low_closed: bool = False) -> None:
    ok = (0.0 <= value < 0.5) if low_closed else (0.0 < value < 0.5)
    if not ok:
        raise DomainError(name, value, "[0, 0.5)" if low_closed else "(0, 0.5)")


def _validate(p: IcParams, tau_closed: bool = False) -> None:
    _require_open("tau1", p.tau1)
    _require_open("tau", p.tau, low_closed=tau_closed)
    _require_open("delta1", p.delta1)
    _require_open("delta", p.delta)


def _h_weighted(weight: float, x_num: float) -> float:
    """weight·h_b(x_num/weight), 0·h_b(0/0) = 0"""
    if weight == 0.0:
        return 0.0
    return weight * binary_entropy(min(max(x_num / weight, 0.0), 1.0))


# ============================================
# 예제 1 / 예제 4
# ============================================

def ptp_capacity_triple(p: IcParams) -> Tuple[float, float, float]:
    """(δh(τ₁,δ₁), δh(τ,δ), δh(τ,δ))"""
    c2 = bsc_capacity_cost(p.tau, p.delta)
    return bsc_capacity_cost(p.tau1, p.delta1), c2, c2


def check_prop1(p: IcParams, strict_eps: float = 0.0) -> PropositionReport:
    """
    iid 코드로 PTP 용량 삼중항 달성 불가 조건

    δh(τ₁,δ₁) + 2δh(τ,δ) > h_b(τ₁*β) − h_b(δ₁)
    """
    _validate(p)
    c1, c2, c3 = ptp_capacity_triple(p)
    beta = p.beta
    lhs = c1 + c2 + c3
    rhs = binary_entropy(bconv(p.tau1, beta)) - binary_entropy(p.delta1)
    margin = lhs - rhs
    return PropositionReport(
        name="prop1",
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        verdict=margin > strict_eps,
        intermediates={"beta": beta, "dh_tau1_delta1": c1, "dh_tau_delta": c2},
    )


def compute_theta(p: IcParams) -> float:
    """
    θ = h_b(τ) − h_b((1−τ)²) − (2τ−τ²)h_b(τ²/(2τ−τ²)) − h_b(τ₁*δ₁) + h_b(τ₁*β)

    τ = 0 허용 (0·h_b(0/0) = 0)
    """
    _require_open("tau1", p.tau1)
    _require_open("tau", p.tau, low_closed=True)
    _require_open("delta1", p.delta1)
    tau = p.tau
    spread = 2 * tau - tau ** 2
    return (
        binary_entropy(tau)
        - binary_entropy((1 - tau) ** 2)
        - _h_weighted(spread, tau ** 2)
        - binary_entropy(bconv(p.tau1, p.delta1))
        + binary_entropy(bconv(p.tau1, p.beta))
    )


def check_prop2(p: IcParams) -> PropositionReport:
    """코셋 코드 달성 조건 δh(τ,δ) ≤ θ"""
    _validate(p, tau_closed=True)
    dh = bsc_capacity_cost(p.tau, p.delta)
    theta = compute_theta(p)
    margin = theta - dh
    return PropositionReport(
        name="prop2",
        lhs=dh,
        rhs=theta,
        margin=margin,
        verdict=margin >= 0.0,
        intermediates={"beta": p.beta, "theta": theta, "dh_tau_delta": dh},
    )


def check_prop4(p: IcParams, strict_eps: float = 0.0) -> PropositionReport:
    """3-BC: iid 영역 밖 조건 (명제 1 과 동일한 식)"""
    return check_prop1(p, strict_eps).model_copy(update={"name": "prop4"})


def check_prop5(p: IcParams) -> PropositionReport:
    """3-BC: 코셋 달성 조건 (명제 2 와 동일한 식)"""
    return check_prop2(p).model_copy(update={"name": "prop5"})


def scan_tau(
    check: Callable[[IcParams], PropositionReport],
    params: IcParams,
    taus: Sequence[float],
) -> List[PropositionReport]:
    """τ 만 바꿔 가며 판정 반복"""
    return [check(replace(params, tau=float(t))) for t in taus]


# ============================================
# 결합 분포 / 삼진 임베딩
# ============================================

def ex1_joint(p: IcParams) -> JointPmf:
    """예제 1 결합 분포 (X₁ X₂ X₃ Y₁ Y₂ Y₃), p(1) = (τ₁, τ, τ)"""
    ch = make_ex1(p.delta1, p.delta, p.delta)
    laws = [Pmf.bernoulli(p.tau1), Pmf.bernoulli(p.tau), Pmf.bernoulli(p.tau)]
    return joint_distribution(ch, laws)


def embedded_joint(joint: JointPmf, q: int = 3, user_axes: Sequence[int] = (1, 2)) -> JointPmf:
    """사용자 축을 F_q 로 임베딩 (U_j = X_j, P(U_j ≥ 2) = 0)"""
    return embed_axes(joint, user_axes, q)


def coset_sum_margin(
    joint: JointPmf,
    receiver_axis: int,
    sum_axes: Tuple[int, int] = (1, 2),
    q: int = 3,
    user_axis: Optional[int] = None,
) -> float:
    """
    사용자당 합 복호 상한 H(U_j) − H(U_i ⊕_q U_k | Y)

    Args:
        joint: 임베딩된 U 축을 포함한 결합 분포
        receiver_axis: 수신 출력 축
        sum_axes: 합을 취할 두 U 축
        q: 체 크기
        user_axis: H(U_j) 의 축 (기본 sum_axes[0])

    Raises:
        InvalidDistributionError: U 축이 F_q 크기가 아니거나 {0,1} 밖에 확률이 있음
    """
    for axis in sum_axes:
        if joint.dims[axis] != q:
            raise InvalidDistributionError(f"축 {axis} 크기 {joint.dims[axis]} ≠ q={q} (임베딩 필요)")
        law = marginal(joint, axis).table
        if law[2:].sum() > settings.PMF_TOL:
            raise InvalidDistributionError(f"축 {axis}: 임베딩 위반, P(U ≥ 2) = {law[2:].sum()!r}")
    user_axis = sum_axes[0] if user_axis is None else user_axis
    with_sum = with_sum_axis(joint, sum_axes[0], sum_axes[1], q)
    sum_axis = with_sum.ndim - 1
    return joint_entropy(with_sum, user_axis) - cond_entropy(with_sum, sum_axis, receiver_axis)


def sum_decode_bound(joint: JointPmf, receiver_axis: int, sum_axes: Tuple[int, int], q: int) -> float:
    """log₂q − H(U_i ⊕_q U_k | Y)"""
    with_sum = with_sum_axis(joint, sum_axes[0], sum_axes[1], q)
    return float(np.log2(q)) - cond_entropy(with_sum, with_sum.ndim - 1, receiver_axis)


def theta_from_joint(p: IcParams) -> float:
    """h_b(τ) − H(U₂⊕₃U₃ | Y₁) 을 예제 1 결합 분포에서 직접 계산"""
    return coset_sum_margin(embedded_joint(ex1_joint(p)), receiver_axis=3)


def alignment_residual(joint: JointPmf, axis_a: int = 1, axis_b: int = 2) -> float:
    """H(X_a ∨ X_b | X_a ⊕₃ X_b), 임베딩된 결합 분포에서 0"""
    with_sum = with_sum_axis(joint, axis_a, axis_b, 3)
    with_or = with_derived_axis(with_sum, (axis_a, axis_b), lambda a, b: int(a != 0 or b != 0), 2)
    return cond_entropy(with_or, with_or.ndim - 1, with_or.ndim - 2)


def iid_superposition_bound(
    joint: JointPmf,
    x_axis: int = 0,
    y_axis: int = 3,
    cloud_axes: Sequence[int] = (1, 2),
) -> float:
    """I(X₁;Y₁|U₂,U₃), U_j = X_j: 구름 중심을 모두 복호할 때 사용자 1 의 상한"""
    return cond_mutual_info(joint, x_axis, y_axis, tuple(cloud_axes))


# ============================================
# 예제 2 / 명제 3
# ============================================

def _with_or_axis(joint: JointPmf) -> JointPmf:
    """X₂ ∨ X₃ 축 추가 (축 6)"""
    return with_derived_axis(joint, (1, 2), lambda a, b: a | b, 2)


def _ex2_joint(ch: ChannelModel, p: float, tau: float) -> JointPmf:
    laws = [Pmf.bernoulli(p), Pmf.bernoulli(tau), Pmf.bernoulli(tau)]
    return joint_distribution(ch, laws)


def c1_objective(ch: ChannelModel, p: float, tau: float) -> float:
    """I(X₁;Y₁|X₂∨X₃) at P(X₁=1)=p, P(X₂=1)=P(X₃=1)=τ"""
    joint = _with_or_axis(_ex2_joint(ch, p, tau))
    return cond_mutual_info(joint, 0, 3, 6)


def compute_c1(ch: ChannelModel, tau1: float, tau: float) -> C1Result:
    """
    C₁ = max_{p ≤ τ₁} I(X₁;Y₁|X₂∨X₃)

    격자 (settings.C1_GRID_STEP) → 황금분할 (settings.C1_GOLDEN_TOL)
    """
    _require_open("tau1", tau1, low_closed=True)
    _require_open("tau", tau)
    opt = maximize_scalar(lambda p: c1_objective(ch, p, tau), 0.0, tau1)
    logger.info(f"✅ C₁ = {opt.value:.6f} at P(X₁=1) = {opt.x:.6f} (반복 {opt.iterations}회)")
    return C1Result(
        c1=max(opt.value, 0.0),
        p_star_x1_1=min(opt.x, tau1),
        iterations=opt.iterations,
        optimizer_tolerance=opt.tolerance,
    )


def _check_ex2_delta(ch: ChannelModel, delta: float) -> None:
    built = ch.params.get("delta")
    if built is not None and abs(float(built) - delta) > 1e-15:
        raise DomainError("delta", delta, f"{{{built}}} (채널 생성 시 δ)")


def check_prop3(
    ch: Optional[ChannelModel],
    tau1: float,
    tau: float,
    delta: float,
    c1: Optional[C1Result] = None,
) -> Tuple[PropositionReport, PropositionReport]:
    """
    명제 3: (A) iid 불가능 간격 G_A > 0, (B) 코셋 여유 G_B ≤ 0

    G_A = C₁ + 2δh(τ,δ) − I(X̲;Y₁)
    G_B = h_b(τ²) + (1−τ²)h_b((1−τ)²/(1−τ²)) + H(Y₁|X₂∨X₃) − H(Y₁) − min{H(X₂|Y₂), H(X₃|Y₃)}

    ch 가 None 이면 기본 MAC 과 δ 로 예제 2 채널 생성
    """
    _require_open("delta", delta)
    ch = make_ex2(delta=delta) if ch is None else ch
    _check_ex2_delta(ch, delta)
    c1 = c1 or compute_c1(ch, tau1, tau)
    joint = _with_or_axis(_ex2_joint(ch, c1.p_star_x1_1, tau))

    dh = bsc_capacity_cost(tau, delta)
    info_all = mutual_info(joint, X_AXES, 3)
    lhs_a = c1.c1 + 2 * dh
    gap_a = lhs_a - info_all
    report_a = PropositionReport(
        name="prop3_iid",
        lhs=lhs_a,
        rhs=info_all,
        margin=gap_a,
        verdict=gap_a > 0.0,
        intermediates={"c1": c1.c1, "dh_tau_delta": dh, "I_X_Y1": info_all, "G_A": gap_a},
    )

    sum_entropy = binary_entropy(tau ** 2) + _h_weighted(1 - tau ** 2, (1 - tau) ** 2)
    h_y1_given_or = cond_entropy(joint, 3, 6)
    h_y1 = joint_entropy(joint, 3)
    h_x2_y2 = cond_entropy(joint, 1, 4)
    h_x3_y3 = cond_entropy(joint, 2, 5)
    lhs_b = sum_entropy + h_y1_given_or - h_y1
    rhs_b = min(h_x2_y2, h_x3_y3)
    gap_b = lhs_b - rhs_b
    report_b = PropositionReport(
        name="prop3_coset",
        lhs=lhs_b,
        rhs=rhs_b,
        margin=-gap_b,
        verdict=gap_b <= 0.0,
        intermediates={
            "H_sum": sum_entropy,
            "H_Y1_given_or": h_y1_given_or,
            "H_Y1": h_y1,
            "H_X2_given_Y2": h_x2_y2,
            "H_X3_given_Y3": h_x3_y3,
            "G_B": gap_b,
        },
    )
    logger.info(f"📊 명제 3: G_A = {gap_a:+.6f}, G_B = {gap_b:+.6f}")
    return report_a, report_b


# ============================================
# 예제 3
# ============================================

def check_ex3_simultaneity(beta: float, delta: float, tau: float) -> SimultaneityReport:
    """
    예제 3: 각 수신기가 나머지 두 구름 중심의 합을 복호할 때 PTP 용량 동시 달성

    수신기 j 는 R_i ≤ B_j, R_k ≤ B_j 이면 통과
    R_m = I(X_m;Y_m|X_i'∨X_k'), B_j = h_b(τ) − H(U_i⊕₃U_k|Y_j)
    """
    _require_open("beta", beta)
    _require_open("delta", delta)
    _require_open("tau", tau, low_closed=True)
    ch = make_ex3(beta, delta)
    joint = joint_distribution(ch, [Pmf.bernoulli(tau)] * 3)

    rates = {}
    for m in range(3):
        i, k = [u for u in range(3) if u != m]
        with_or = with_derived_axis(joint, (i, k), lambda a, b: a | b, 2)
        rates[m] = cond_mutual_info(with_or, m, 3 + m, 6)

    embedded = embed_axes(joint, X_AXES, 3)
    checks = []
    for j in range(3):
        i, k = [u for u in range(3) if u != j]
        bound = coset_sum_margin(embedded, receiver_axis=3 + j, sum_axes=(i, k))
        margin = bound - max(rates[i], rates[k])
        checks.append(ReceiverCheck(
            receiver=j + 1,
            rates={f"R{i + 1}": rates[i], f"R{k + 1}": rates[k]},
            bound=bound,
            margin=margin,
            verdict=margin >= -settings.PMF_TOL,
        ))
        logger.debug(f"수신기 {j + 1}: B = {bound:.6f}, margin = {margin:+.6f}")

    return SimultaneityReport(
        beta=beta,
        delta=delta,
        tau=tau,
        receivers=checks,
        verdict=all(c.verdict for c in checks),
    )
