"""
채널 파일 명령 (channel dump | check)
"""
import logging

from COSETLAB.CLI.output import CommandOutput
from COSETLAB.schemas.channel import ChannelFile
from COSETLAB.services.channel_models import (
    channel_to_file,
    channel_to_json,
    load_channel,
    make_ex1,
    make_ex2,
    make_ex3,
    make_ex4,
    make_ex5,
)
from COSETLAB.services.macdstx import make_doubly_dirty, make_noiseless_adder

logger = logging.getLogger(__name__)

BUILDERS = {
    "ex1": lambda: make_ex1(0.01, 0.067, 0.067),
    "ex2": make_ex2,
    "ex3": lambda: make_ex3(0.221, 0.1),
    "ex4": lambda: make_ex4(0.01, 0.067),
    "ex5": make_ex5,
    "doubly_dirty": make_doubly_dirty,
    "noiseless_adder": make_noiseless_adder,
}


def _summary(doc: ChannelFile) -> str:
    return (
        f"{doc.name}: 입력 {doc.input_dims}, 상태 {doc.state_dims}, 출력 {doc.output_dims}, "
        f"행 {len(doc.rows)}, 비용 함수 {len(doc.cost_fns)}"
    )


def cmd_dump(args) -> CommandOutput:
    """예제 채널을 JSON 채널 파일로"""
    ch = BUILDERS[args.example]()
    doc = channel_to_file(ch)
    return CommandOutput(
        text=channel_to_json(ch),
        structured=doc,
        default_format="text",
    )


def cmd_check(args) -> CommandOutput:
    """채널 파일 검증 (행 합계, 차원, 비용)"""
    ch = load_channel(args.path)
    doc = channel_to_file(ch)
    logger.info(f"✅ 채널 파일 검증 통과: {args.path}")
    return CommandOutput(
        text=f"✅ {_summary(doc)}",
        structured=doc,
        csv_header=("name", "rows", "columns"),
        csv_rows=[[doc.name, len(doc.rows), len(doc.rows[0]) if doc.rows else 0]],
    )


def register(subparsers) -> None:
    p = subparsers.add_parser("channel", help="채널 파일 저장 / 검증")
    actions = p.add_subparsers(dest="action", required=True)

    dump = actions.add_parser("dump", help="예제 채널을 JSON 으로 출력")
    dump.add_argument("--example", choices=sorted(BUILDERS), default="ex5")
    dump.set_defaults(handler=cmd_dump)

    check = actions.add_parser("check", help="채널 파일 검증")
    check.add_argument("path")
    check.set_defaults(handler=cmd_check)
