"""
전역 에러 핸들러
모든 예외를 일관된 종료 코드와 구조화된 에러 페이로드로 변환
"""
import logging
import traceback
from datetime import datetime
from typing import Any, Dict, Tuple

from COSETLAB.core.exceptions import (
    CosetLabException,
    EXIT_SOFTWARE,
)


logger = logging.getLogger(__name__)


def cosetlab_exception_handler(exc: CosetLabException) -> Tuple[int, Dict[str, Any]]:
    """
    커스텀 CosetLabException 핸들러

    구조화된 에러 페이로드 반환
    """
    logger.warning(
        f"⚠️ CosetLabException | "
        f"Exit: {exc.exit_code} | "
        f"Error: {exc.error_code} | "
        f"Detail: {exc.detail}"
    )

    payload = {
        "error": exc.error_code,
        "detail": exc.detail,
        "timestamp": _get_timestamp(),
    }
    if exc.context:
        payload["context"] = exc.context

    return exc.exit_code, payload


def general_exception_handler(exc: Exception) -> Tuple[int, Dict[str, Any]]:
    """
    예상치 못한 일반 예외 핸들러

    내부 오류 (70) 반환
    """
    logger.error(f"❌ UNEXPECTED ERROR | Error: {exc}", exc_info=True)

    payload = {
        "error": "INTERNAL_ERROR",
        "detail": "내부 오류가 발생했습니다.",
        "timestamp": _get_timestamp(),
    }

    # 디버그 로깅일 때만 상세 정보 제공
    if logging.getLogger("COSETLAB").isEnabledFor(logging.DEBUG):
        payload["debug"] = {
            "exception": str(exc),
            "type": type(exc).__name__,
            "traceback": traceback.format_exc(),
        }

    return EXIT_SOFTWARE, payload


def handle_exception(exc: BaseException) -> Tuple[int, Dict[str, Any]]:
    """예외 종류에 맞는 핸들러로 분기"""
    if isinstance(exc, CosetLabException):
        return cosetlab_exception_handler(exc)
    return general_exception_handler(exc)


def _get_timestamp() -> str:
    """현재 시간 ISO 형식으로 반환"""
    return datetime.now().isoformat()
