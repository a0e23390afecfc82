"""
명령 결과 출력

한 명령의 결과를 text / csv / structured(JSON) 중 하나로 렌더링
"""
import csv
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Sequence

from pydantic import BaseModel

from COSETLAB.core.exceptions import UsageError

logger = logging.getLogger(__name__)

FORMATS = ("text", "csv", "structured")


@dataclass
class CommandOutput:
    """명령 핸들러 반환값"""
    text: str
    structured: BaseModel
    csv_header: Sequence[str] = ()
    csv_rows: List[Sequence[Any]] = field(default_factory=list)
    default_format: str = "text"
    # csv 를 직접 만든 경우 (sweep)
    csv_text: Optional[str] = None


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def render(output: CommandOutput, fmt: Optional[str] = None) -> str:
    fmt = fmt or output.default_format
    if fmt == "structured":
        return output.structured.model_dump_json(indent=2) + "\n"
    if fmt == "csv":
        if output.csv_text is not None:
            return output.csv_text
        if not output.csv_header:
            raise UsageError("이 명령은 csv 형식을 지원하지 않습니다.")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(output.csv_header)
        for row in output.csv_rows:
            writer.writerow([_csv_cell(v) for v in row])
        return buf.getvalue()
    if fmt == "text":
        return output.text if output.text.endswith("\n") else output.text + "\n"
    raise UsageError(f"알 수 없는 출력 형식: {fmt}")


def write_output(text: str, out_path: Optional[str], stream) -> None:
    """--out 이 있으면 파일, 없으면 stream (stdout)"""
    if out_path:
        path = Path(out_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"✅ 결과 저장: {path}")
    else:
        stream.write(text)
