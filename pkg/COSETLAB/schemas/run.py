"""
CLI 실행 설정 스키마
"""
from pydantic import BaseModel, Field
from typing import Dict, Literal, Optional


COMMANDS = ("props", "c1", "prop3", "ex3", "sweep", "closure", "sim", "channel")


class RunConfig(BaseModel):
    """한 번의 CLI 실행"""
    command: Literal["props", "c1", "prop3", "ex3", "sweep", "closure", "sim", "channel"]
    params: Dict[str, str] = Field(default_factory=dict, description="원문 그대로의 파라미터 문자열")
    output_path: Optional[str] = Field(None, description="결과 파일 경로 (없으면 stdout)")
    format: Literal["text", "csv", "structured"] = "text"
