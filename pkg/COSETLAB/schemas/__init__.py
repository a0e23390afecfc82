"""
Schemas 패키지
pydantic 리포트 / 채널 파일 / 실행 설정 모델
"""
from COSETLAB.schemas.channel import ChannelFile, CostFnFile
from COSETLAB.schemas.report import (
    PropositionReport,
    PropositionSuite,
    C1Result,
    Prop3Report,
    ReceiverCheck,
    SimultaneityReport,
    SweepRow,
    SweepReport,
    DstxTestChannelModel,
    BoundResult,
    SimReport,
    ClosureReport,
)
from COSETLAB.schemas.run import RunConfig, COMMANDS

__all__ = [
    # Channel
    "ChannelFile",
    "CostFnFile",

    # Reports
    "PropositionReport",
    "PropositionSuite",
    "C1Result",
    "Prop3Report",
    "ReceiverCheck",
    "SimultaneityReport",
    "SweepRow",
    "SweepReport",
    "DstxTestChannelModel",
    "BoundResult",
    "SimReport",
    "ClosureReport",

    # Run
    "RunConfig",
    "COMMANDS",
]
