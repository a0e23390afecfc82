"""
Services 패키지

정보 이론 계산, 채널 모델, 판정, 최적화, 시뮬레이션 모듈

모듈 구조:
- finite_math: pmf / 엔트로피 / F_q 연산
- channel_models: 예제 채널과 채널 파일
- optimizer: 스칼라 격자 + 황금분할
- region_analysis: 명제 판정, C₁, 합 복호 여유분
- macdstx: MAC-DSTx iid / 코셋 경계와 τ 스윕
- coset_sim: 코셋 코드 닫힘 성질과 합 복호 몬테카를로
"""

# 유한 수학
from COSETLAB.services.finite_math import (
    Pmf,
    JointPmf,
    FieldElem,
    binary_entropy,
    bconv,
    bsc_capacity_cost,
    entropy,
    cond_entropy,
    mutual_info,
    cond_mutual_info,
    fq_rank,
)

# 채널 모델
from COSETLAB.services.channel_models import (
    ChannelModel,
    CostFn,
    make_ex1,
    make_ex2,
    make_ex3,
    make_ex4,
    make_ex5,
    joint_distribution,
    dump_channel,
    load_channel,
)

# 영역 판정
from COSETLAB.services.region_analysis import (
    IcParams,
    check_prop1,
    check_prop2,
    check_prop4,
    check_prop5,
    compute_theta,
    compute_c1,
    check_prop3,
    check_ex3_simultaneity,
    coset_sum_margin,
)

# MAC-DSTx
from COSETLAB.services.macdstx import (
    iid_sum_rate_ub,
    coset_sum_rate_lb,
    optimize_bound,
    sweep_tau,
    rows_to_csv,
    make_doubly_dirty,
    make_noiseless_adder,
)

# 코셋 시뮬레이션
from COSETLAB.services.coset_sim import (
    LinearCode,
    CosetCodebook,
    sample_code,
    enumerate_coset,
    sum_support_count,
    closure_report,
    covering_dimension,
    simulate_ex1_sum_decode,
)

__all__ = [
    # Finite math
    "Pmf",
    "JointPmf",
    "FieldElem",
    "binary_entropy",
    "bconv",
    "bsc_capacity_cost",
    "entropy",
    "cond_entropy",
    "mutual_info",
    "cond_mutual_info",
    "fq_rank",

    # Channels
    "ChannelModel",
    "CostFn",
    "make_ex1",
    "make_ex2",
    "make_ex3",
    "make_ex4",
    "make_ex5",
    "joint_distribution",
    "dump_channel",
    "load_channel",

    # Region analysis
    "IcParams",
    "check_prop1",
    "check_prop2",
    "check_prop4",
    "check_prop5",
    "compute_theta",
    "compute_c1",
    "check_prop3",
    "check_ex3_simultaneity",
    "coset_sum_margin",

    # MAC-DSTx
    "iid_sum_rate_ub",
    "coset_sum_rate_lb",
    "optimize_bound",
    "sweep_tau",
    "rows_to_csv",
    "make_doubly_dirty",
    "make_noiseless_adder",

    # Coset simulation
    "LinearCode",
    "CosetCodebook",
    "sample_code",
    "enumerate_coset",
    "sum_support_count",
    "closure_report",
    "covering_dimension",
    "simulate_ex1_sum_decode",
]
