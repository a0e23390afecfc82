"""
Utils 패키지
로깅, 파라미터 파싱 유틸리티
"""
from COSETLAB.utils.logger import setup_logger, ColoredFormatter, JsonFormatter
from COSETLAB.utils.parsing import parse_fraction, parse_prob, decimal_to_float, float_to_decimal

__all__ = [
    # Logger
    "setup_logger",
    "ColoredFormatter",
    "JsonFormatter",

    # Parsing
    "parse_fraction",
    "parse_prob",
    "decimal_to_float",
    "float_to_decimal",
]
