"""
커스텀 예외 정의
라이브러리와 CLI에서 공통으로 사용하는 구조화된 예외 클래스들

종료 코드는 sysexits 관례를 따름 (64 사용법 오류, 65 데이터 오류, 70 내부 오류)
"""
from typing import Any, Optional, Dict


EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_SOFTWARE = 70


class CosetLabException(Exception):
    """
    커스텀 예외 기본 클래스

    모든 커스텀 예외는 이 클래스를 상속받아야 함
    """
    def __init__(
        self,
        detail: str,
        error_code: Optional[str] = None,
        exit_code: int = EXIT_DATAERR,
        context: Optional[Dict[str, Any]] = None
    ):
        self.detail = detail
        self.error_code = error_code or self.__class__.__name__
        self.exit_code = exit_code
        self.context = context or {}
        super().__init__(detail)


class DomainError(CosetLabException, ValueError):
    """허용 구간을 벗어난 값"""
    def __init__(self, name: str, value: Any, interval: str):
        super().__init__(
            detail=f"{name}={value} 값이 허용 구간 {interval}을(를) 벗어났습니다",
            error_code="DOMAIN_ERROR",
            context={"name": name, "value": value, "interval": interval}
        )


class InvalidDistributionError(CosetLabException, ValueError):
    """확률분포 정규화/음수 조건 위반"""
    def __init__(self, reason: str):
        super().__init__(
            detail=f"잘못된 확률분포: {reason}",
            error_code="INVALID_DISTRIBUTION"
        )


class AxisError(CosetLabException, ValueError):
    """축 집합 오류 (범위 밖 또는 중복)"""
    def __init__(self, reason: str):
        super().__init__(
            detail=f"축 지정 오류: {reason}",
            error_code="AXIS_ERROR"
        )


class DimensionMismatchError(CosetLabException, ValueError):
    """테이블/분포 차원 불일치"""
    def __init__(self, what: str, expected: Any, actual: Any):
        super().__init__(
            detail=f"{what} 차원이 맞지 않습니다: 기대값 {expected}, 실제값 {actual}",
            error_code="DIMENSION_MISMATCH",
            context={"expected": expected, "actual": actual}
        )


class ModulusMismatchError(CosetLabException, ValueError):
    """서로 다른 유한체 원소 연산 또는 지원하지 않는 q"""
    def __init__(self, q_left: int, q_right: Optional[int] = None):
        if q_right is None:
            detail = f"지원하지 않는 유한체 크기입니다: q={q_left}"
        else:
            detail = f"유한체 크기가 다릅니다: q={q_left} vs q={q_right}"
        super().__init__(detail=detail, error_code="MODULUS_MISMATCH")


class ChannelParseError(CosetLabException):
    """채널 파일 파싱 실패"""
    def __init__(self, reason: str, row: Optional[int] = None, column: Optional[int] = None):
        where = ""
        if row is not None:
            where = f" (row {row}" + (f", column {column})" if column is not None else ")")
        super().__init__(
            detail=f"채널 파일 파싱 실패{where}: {reason}",
            error_code="CHANNEL_PARSE_ERROR",
            context={"row": row, "column": column}
        )


class GuardExceededError(CosetLabException):
    """열거 크기 한도 초과"""
    def __init__(self, what: str, size: int, guard: int):
        super().__init__(
            detail=f"{what} 크기 {size}가 한도 {guard}를 초과합니다",
            error_code="GUARD_EXCEEDED",
            context={"size": size, "guard": guard}
        )


class OptimizerNonConvergence(CosetLabException):
    """최적화 반복 한도 도달 (최선값은 context에 보존)"""
    def __init__(self, what: str, iterations: int, best: Optional[Dict[str, Any]] = None):
        super().__init__(
            detail=f"{what}: 반복 한도 {iterations}회 내에 수렴하지 않았습니다",
            error_code="OPTIMIZER_NON_CONVERGENCE",
            exit_code=EXIT_SOFTWARE,
            context={"iterations": iterations, "best": best or {}}
        )


class UsageError(CosetLabException):
    """CLI 사용법 오류"""
    def __init__(self, detail: str):
        super().__init__(
            detail=detail,
            error_code="USAGE_ERROR",
            exit_code=EXIT_USAGE
        )
