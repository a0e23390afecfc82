"""
파라미터 파싱 유틸리티

"1/90", "0.067" 같은 문자열을 Fraction 으로 정확히 읽은 뒤
float 로 한 번만 변환
"""
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Optional

from COSETLAB.core.exceptions import DomainError, UsageError


def parse_fraction(text: str) -> Fraction:
    """10진수 또는 분수 문자열 → Fraction"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError, AttributeError):
        raise UsageError(f"숫자로 읽을 수 없는 값입니다: {text!r}")


def parse_prob(
    text: str,
    name: str = "p",
    open_low: bool = False,
    open_high: bool = False,
    upper: Fraction = Fraction(1),
) -> float:
    """
    확률 파라미터 파싱 및 구간 검사

    Args:
        text: "1/90", "0.15" 형태의 문자열
        name: 오류 메시지에 쓰일 파라미터 이름
        open_low / open_high: 구간 끝점 제외 여부
        upper: 상한 (기본 1)

    Returns:
        float 로 변환된 값
    """
    value = parse_fraction(text)
    low_ok = value > 0 if open_low else value >= 0
    high_ok = value < upper if open_high else value <= upper
    if not (low_ok and high_ok):
        interval = f"{'(' if open_low else '['}0, {upper}{')' if open_high else ']'}"
        raise DomainError(name, text, interval)
    return float(value)


def decimal_to_float(text: str) -> Optional[float]:
    """채널 파일의 10진 문자열 확률 → float (형식 오류면 None)"""
    try:
        value = Decimal(text)
    except (InvalidOperation, TypeError):
        return None
    if not value.is_finite():
        return None
    return float(value)


def float_to_decimal(value: float) -> str:
    """float → 최단 왕복 10진 문자열"""
    return repr(float(value))
