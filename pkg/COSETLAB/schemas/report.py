"""
결과 리포트 스키마

CLI 의 structured 출력 (JSON) 과 CSV 행의 원천
"""
from pydantic import BaseModel, Field
from typing import Dict, List, Optional


class PropositionReport(BaseModel):
    """
    명제 부등식의 양변, 여유분, 판정

    margin ≥ 0 (엄격한 명제는 > 0) 이면 verdict 가 참
    """
    name: str = Field(..., description="명제 식별자")
    lhs: float = Field(..., description="좌변 (비트)")
    rhs: float = Field(..., description="우변 (비트)")
    margin: float = Field(..., description="조건이 성립하는 방향이 양수인 여유분 (비트)")
    verdict: bool = Field(..., description="조건 성립 여부")
    intermediates: Dict[str, float] = Field(default_factory=dict, description="β, θ 등 중간값")

    model_config = {
        "json_schema_extra": {
            "example": {
                "name": "prop2",
                "lhs": 0.3611,
                "rhs": 0.3633,
                "margin": 0.0022,
                "verdict": True,
                "intermediates": {"beta": 0.28195, "theta": 0.3633},
            }
        }
    }


class PropositionSuite(BaseModel):
    """여러 명제 리포트 묶음"""
    reports: List[PropositionReport]


class C1Result(BaseModel):
    """C₁ 최적화 결과"""
    c1: float = Field(..., ge=0, description="C₁ (비트)")
    p_star_x1_1: float = Field(..., ge=0, le=1, description="최적 P(X₁=1)")
    iterations: int = Field(..., ge=0, description="황금분할 반복 횟수")
    optimizer_tolerance: float = Field(..., description="p 방향 허용오차")


class Prop3Report(BaseModel):
    """명제 3: C₁ 과 두 판정"""
    c1: C1Result
    iid_gap: PropositionReport
    coset_slack: PropositionReport


class ReceiverCheck(BaseModel):
    """수신기 j 의 합 복호 조건"""
    receiver: int = Field(..., description="수신기 번호 (1부터)")
    rates: Dict[str, float] = Field(..., description="간섭 사용자별 목표 전송률 R_m")
    bound: float = Field(..., description="합 복호 상한 B_j")
    margin: float = Field(..., description="B_j − max R_m")
    verdict: bool


class SimultaneityReport(BaseModel):
    """예제 3 동시 달성 판정"""
    beta: float
    delta: float
    tau: float
    receivers: List[ReceiverCheck]
    verdict: bool


class SweepRow(BaseModel):
    """τ 스윕 한 점"""
    tau: float = Field(..., ge=0, le=0.5)
    iid_upper: float = Field(..., ge=0, le=1)
    coset_lower: float = Field(..., ge=0, le=1)


class DstxTestChannelModel(BaseModel):
    """MAC-DSTx 테스트 채널 직렬화 형태"""
    q: Optional[int] = Field(None, description="코셋 경계의 체 크기 (iid 는 None)")
    aux_sizes: List[int]
    u_laws: List[List[List[float]]] = Field(..., description="인코더별 P(U_j|S_j) 행")
    x_maps: List[List[List[int]]] = Field(..., description="인코더별 x_j(u, s)")


class BoundResult(BaseModel):
    """합 전송률 경계 최적화 결과"""
    bound: str = Field(..., description="iid 또는 coset")
    tau: float
    value: float = Field(..., ge=0)
    test_channel: DstxTestChannelModel
    map_pairs: int = Field(..., description="탐색한 (정규화된) 사상 쌍 수")
    evaluations: int = Field(..., description="목적함수 평가 횟수")


class SimReport(BaseModel):
    """합 복호 몬테카를로 결과"""
    n: int
    k: int
    q: int
    trials: int
    encoder: str = Field("coset", description="coset (코셋 안 조성 최근접 선택) | dither")
    shaping_k: int = Field(0, description="성형 행 수 k_s")
    rate: float = Field(..., description="메시지 전송률 k·log₂q / n (비트/심볼)")
    sum_coset_rate: float = Field(..., description="합 코셋 전송률 (k+k_s)·log₂q / n")
    decode_error_rate: float = Field(..., ge=0, le=1)
    errors: int
    seed: int
    code_rank: int = Field(..., description="[G; G_s] 의 계수")
    delta1: float
    tau1: float
    tau: float
    coset_sum_margin: float = Field(..., description="H(U) − H(U₂⊕U₃|Y₁)")
    sum_decode_threshold: float = Field(..., description="log₂q − H(U₂⊕U₃|Y₁)")


class ClosureReport(BaseModel):
    """코셋 합 닫힘 성질 확인 결과"""
    n: int
    k: int
    q: int
    seed: int
    rank: int
    sum_support_count: int
    expected_count: int = Field(..., description="q^rank")
    independent_sum_count: int = Field(..., description="독립 무작위 코드북 쌍의 서로 다른 합 개수")
    pair_count: int = Field(..., description="코드워드 쌍 개수 q^(2k)")


class SweepReport(BaseModel):
    """τ 스윕 전체 결과"""
    channel: str = Field(..., description="채널 이름")
    aux_size: int = Field(..., description="iid 경계의 |U_j|")
    q: int = Field(..., description="코셋 경계의 체 크기")
    rows: List[SweepRow]
