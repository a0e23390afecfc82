"""
채널 파일 스키마

확률은 10진 문자열로 저장 (언어 간 재현성)
"""
from pydantic import BaseModel, Field, field_validator
from typing import List, Optional


class CostFnFile(BaseModel):
    """입력 단자별 비용 함수"""
    terminal: int = Field(..., ge=0, description="비용이 걸린 입력 단자 번호")
    table: List[str] = Field(..., description="입력 심볼별 비용 (10진 문자열)")


class ChannelFile(BaseModel):
    """채널 파일 문서"""
    name: str = Field("channel", description="채널 이름")
    input_dims: List[int] = Field(..., min_length=1, description="입력 단자별 알파벳 크기")
    state_dims: List[int] = Field(default_factory=list, description="상태 성분별 알파벳 크기")
    output_dims: List[int] = Field(..., min_length=1, description="출력 단자별 알파벳 크기")
    rows: List[List[str]] = Field(..., description="W 행 (입력·상태 사전식 순서)")
    cost_fns: List[CostFnFile] = Field(default_factory=list, description="비용 함수")
    cost_budgets: List[str] = Field(default_factory=list, description="비용 예산 τ_j")
    state_law: Optional[List[str]] = Field(None, description="결합 상태 분포")

    model_config = {
        "json_schema_extra": {
            "example": {
                "name": "bsc",
                "input_dims": [2],
                "state_dims": [],
                "output_dims": [2],
                "rows": [["0.9", "0.1"], ["0.1", "0.9"]],
                "cost_fns": [{"terminal": 0, "table": ["0", "1"]}],
                "cost_budgets": ["0.5"],
                "state_law": None,
            }
        }
    }

    @field_validator("input_dims", "state_dims", "output_dims")
    @classmethod
    def _positive_dims(cls, v: List[int]) -> List[int]:
        if any(d < 1 for d in v):
            raise ValueError("알파벳 크기는 1 이상이어야 합니다")
        return v
