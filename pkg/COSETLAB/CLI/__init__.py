"""
CLI 명령 패키지

각 모듈은 register(subparsers) 로 하위 명령을 등록하고
핸들러는 CommandOutput 을 반환
"""
from COSETLAB.CLI import channels, coset, macdstx, propositions
from COSETLAB.CLI.output import CommandOutput, FORMATS, render, write_output

COMMAND_GROUPS = (propositions, macdstx, coset, channels)

__all__ = [
    "COMMAND_GROUPS",
    "CommandOutput",
    "FORMATS",
    "render",
    "write_output",
]
