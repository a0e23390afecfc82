"""
공통 유틸리티 테스트

파라미터 파싱, 설정 검증, 에러 핸들러, 로거 출력 위치
"""
import json
from fractions import Fraction

import pytest

from COSETLAB.config import Settings, validate_settings
from COSETLAB.core.error_handler import handle_exception
from COSETLAB.core.exceptions import (
    EXIT_DATAERR,
    EXIT_SOFTWARE,
    ChannelParseError,
    DomainError,
    UsageError,
)
from COSETLAB.utils.logger import setup_logger
from COSETLAB.utils.parsing import decimal_to_float, float_to_decimal, parse_fraction, parse_prob


# ============================================
# 파라미터 파싱
# ============================================

def test_parse_fraction_is_exact():
    assert parse_fraction("1/90") == Fraction(1, 90)
    assert parse_fraction(" 0.067 ") == Fraction(67, 1000)


@pytest.mark.parametrize("text", ["abc", "1/0", ""])
def test_parse_fraction_rejects_garbage(text):
    with pytest.raises(UsageError):
        parse_fraction(text)


def test_parse_prob_interval_ends():
    half = Fraction(1, 2)
    assert parse_prob("0", "tau1", open_high=True, upper=half) == 0.0
    with pytest.raises(DomainError):
        parse_prob("0", "tau", open_low=True, open_high=True, upper=half)
    with pytest.raises(DomainError):
        parse_prob("1/2", "tau", open_low=True, open_high=True, upper=half)
    assert parse_prob("1/2", "p") == 0.5


def test_decimal_strings():
    assert decimal_to_float("1e-3") == 0.001
    assert decimal_to_float("0.989") == 0.989
    assert decimal_to_float("abc") is None
    assert decimal_to_float("nan") is None
    assert float_to_decimal(0.1) == "0.1"
    assert float_to_decimal(1 / 90) == repr(1 / 90)


# ============================================
# 설정
# ============================================

def test_default_settings_are_valid():
    assert validate_settings(Settings()) is True


def test_invalid_settings_are_all_listed():
    config = Settings(THREADS=0, LOG_LEVEL="LOUD", C1_GOLDEN_TOL=0.0)
    with pytest.raises(ValueError) as exc:
        validate_settings(config)
    message = str(exc.value)
    assert "THREADS" in message
    assert "LOG_LEVEL" in message
    assert "C1_GOLDEN_TOL" in message


# ============================================
# 에러 핸들러
# ============================================

def test_domain_error_payload():
    code, payload = handle_exception(DomainError("tau", 0.6, "(0, 1/2)"))
    assert code == EXIT_DATAERR
    assert payload["error"] == "DOMAIN_ERROR"
    assert payload["context"]["name"] == "tau"
    assert "timestamp" in payload


def test_channel_parse_error_carries_position():
    exc = ChannelParseError("행 합이 1이 아닙니다", row=2, column=1)
    assert "row 2, column 1" in exc.detail
    code, payload = handle_exception(exc)
    assert code == EXIT_DATAERR
    assert payload["context"] == {"row": 2, "column": 1}


def test_unexpected_error_is_internal():
    code, payload = handle_exception(RuntimeError("boom"))
    assert code == EXIT_SOFTWARE
    assert payload["error"] == "INTERNAL_ERROR"


# ============================================
# 로거
# ============================================

def test_logger_writes_to_stderr_only(capsys):
    logger = setup_logger("COSETLAB.test_stderr", level="INFO")
    logger.propagate = False
    logger.info("stderr message")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "stderr message" in captured.err


def test_json_logger_emits_one_line_objects(capsys):
    logger = setup_logger("COSETLAB.test_json", level="DEBUG", use_json=True)
    logger.propagate = False
    logger.debug("한 줄 \"따옴표\"")
    record = json.loads(capsys.readouterr().err.strip())
    assert record["level"] == "DEBUG"
    assert record["message"] == "한 줄 \"따옴표\""


def test_log_dir_creates_file(tmp_path):
    logger = setup_logger("COSETLAB.test_file", level="INFO", log_dir=str(tmp_path))
    logger.propagate = False
    logger.info("to file")
    for handler in logger.handlers:
        handler.flush()
    files = list(tmp_path.glob("*.log"))
    assert len(files) == 1
    assert "to file" in files[0].read_text(encoding="utf-8")
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)
