"""
CLI 진입점

사용법: python -m COSETLAB.main <command> [옵션]
stdout 은 결과 전용, 로그와 에러는 stderr
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from COSETLAB import __version__
from COSETLAB.CLI import COMMAND_GROUPS, FORMATS, render, write_output
from COSETLAB.config import settings, validate_settings
from COSETLAB.core.error_handler import handle_exception
from COSETLAB.core.exceptions import UsageError
from COSETLAB.schemas.run import RunConfig
from COSETLAB.utils.logger import setup_logger

logger = logging.getLogger(__name__)


class CosetLabArgumentParser(argparse.ArgumentParser):
    """사용법 오류를 종료 대신 UsageError (64) 로"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = CosetLabArgumentParser(
        prog="cosetlab",
        description=f"{settings.PROJECT_NAME}: 코셋 코드 판정 / 경계 / 시뮬레이션",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=FORMATS, default=None, help="출력 형식 (명령별 기본값)")
    parser.add_argument("--out", default=None, help="결과 파일 경로 (기본 stdout)")
    subparsers = parser.add_subparsers(
        dest="command", required=True, parser_class=CosetLabArgumentParser
    )
    for group in COMMAND_GROUPS:
        group.register(subparsers)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    skip = {"command", "handler", "format", "out"}
    params = {k: str(v) for k, v in vars(args).items() if k not in skip and v is not None}
    return RunConfig(command=args.command, params=params, output_path=args.out, format=args.format or "text")


def main(argv: Optional[List[str]] = None) -> int:
    """명령 실행 후 종료 코드 반환 (0 / 64 / 65 / 70)"""
    try:
        validate_settings()
        setup_logger(
            "COSETLAB",
            level=settings.LOG_LEVEL,
            log_dir=settings.LOG_DIR or None,
            use_json=settings.LOG_JSON,
        )
        args = build_parser().parse_args(argv)
        run = _run_config(args)
        logger.info(f"🚀 {run.command} 시작 {run.params}")

        output = args.handler(args)
        write_output(render(output, args.format), args.out, sys.stdout)

        logger.info(f"✅ {run.command} 완료")
        return 0
    except Exception as exc:
        exit_code, payload = handle_exception(exc)
        sys.stderr.write(json.dumps(payload, ensure_ascii=False, default=str) + "\n")
        return exit_code


if __name__ == "__main__":
    sys.exit(main())
