"""
MAC-DSTx τ 스윕 명령 (sweep)
"""
import logging

from COSETLAB.CLI.output import CommandOutput
from COSETLAB.core.exceptions import UsageError
from COSETLAB.schemas.report import SweepReport
from COSETLAB.services.channel_models import load_channel, make_ex5
from COSETLAB.services.macdstx import rows_to_csv, sweep_tau

logger = logging.getLogger(__name__)


def cmd_sweep(args) -> CommandOutput:
    """
    [0, 0.5] 격자 위 iid 상한 / 코셋 하한

    --channel 이 없으면 예제 5 (Table I) 채널
    """
    if args.grid < 2:
        raise UsageError(f"--grid 는 2 이상이어야 합니다: {args.grid}")
    ch = load_channel(args.channel) if args.channel else make_ex5()
    rows = sweep_tau(
        ch,
        args.grid,
        aux_size=args.aux,
        q=args.q,
        restarts=args.restarts,
        seed=args.seed,
        threads=args.threads,
    )
    lines = [f"{'tau':>8}  {'iid_upper':>10}  {'coset_lower':>11}"]
    lines += [f"{r.tau:8.4f}  {r.iid_upper:10.6f}  {r.coset_lower:11.6f}" for r in rows]
    return CommandOutput(
        text="\n".join(lines),
        structured=SweepReport(channel=ch.name, aux_size=args.aux, q=args.q, rows=rows),
        csv_text=rows_to_csv(rows),
        default_format="csv",
    )


def register(subparsers) -> None:
    p = subparsers.add_parser("sweep", help="MAC-DSTx 합 전송률 경계 τ 스윕 (CSV)")
    p.add_argument("--grid", type=int, default=50, help="격자 점 개수")
    p.add_argument("--channel", default=None, help="채널 파일 (기본: 예제 5)")
    p.add_argument("--aux", type=int, default=2, help="iid 경계의 |U_j| (2~4)")
    p.add_argument("--q", type=int, default=2, choices=(2, 3), help="코셋 경계의 체 크기")
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None, help="기본 COSETLAB_THREADS")
    p.set_defaults(handler=cmd_sweep)
