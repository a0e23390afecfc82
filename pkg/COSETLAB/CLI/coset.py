"""
코셋 코드 명령 (closure, sim)
"""
import logging

from COSETLAB.CLI.output import CommandOutput
from COSETLAB.CLI.propositions import half_open_half, open_half
from COSETLAB.services.coset_sim import ENCODERS, closure_report, simulate_ex1_sum_decode

logger = logging.getLogger(__name__)


def cmd_closure(args) -> CommandOutput:
    """합 닫힘 성질과 독립 코드북 대조"""
    report = closure_report(args.n, args.k, args.q, args.seed)
    text = "\n".join([
        f"코드: n={report.n}, k={report.k}, q={report.q}, rank={report.rank} (seed {report.seed})",
        f"sum_support_count = {report.sum_support_count} (q^rank = {report.expected_count})",
        f"독립 코드북 합 개수 = {report.independent_sum_count} / 쌍 {report.pair_count}",
    ])
    row = [report.n, report.k, report.q, report.seed, report.rank,
           report.sum_support_count, report.expected_count, report.independent_sum_count]
    return CommandOutput(
        text=text,
        structured=report,
        csv_header=("n", "k", "q", "seed", "rank", "sum_support_count",
                    "expected_count", "independent_sum_count"),
        csv_rows=[row],
    )


def cmd_sim(args) -> CommandOutput:
    """예제 1 합 복호 몬테카를로"""
    report = simulate_ex1_sum_decode(
        n=args.n,
        k=args.k,
        q=args.q,
        delta1=half_open_half(args.delta1, "delta1"),
        tau1=half_open_half(args.tau1, "tau1"),
        tau=open_half(args.tau, "tau"),
        trials=args.trials,
        seed=args.seed,
        threads=args.threads,
        shaping_k=args.shaping_k,
        encoder=args.encoder,
    )
    text = "\n".join([
        f"n={report.n}, k={report.k}, k_s={report.shaping_k}, q={report.q}, rank={report.code_rank} ({report.encoder})",
        f"전송률 {report.rate:.4f} / 코셋 여유 {report.coset_sum_margin:.4f}",
        f"합 코셋 전송률 {report.sum_coset_rate:.4f} / 복호 한계 {report.sum_decode_threshold:.4f}",
        f"오류율 {report.decode_error_rate:.4f} ({report.errors}/{report.trials}, seed {report.seed})",
    ])
    return CommandOutput(
        text=text,
        structured=report,
        csv_header=("n", "k", "shaping_k", "q", "trials", "rate", "decode_error_rate", "errors",
                    "seed", "sum_decode_threshold", "coset_sum_margin"),
        csv_rows=[[report.n, report.k, report.shaping_k, report.q, report.trials, report.rate,
                   report.decode_error_rate, report.errors, report.seed,
                   report.sum_decode_threshold, report.coset_sum_margin]],
    )


def register(subparsers) -> None:
    p = subparsers.add_parser("closure", help="코셋 합 닫힘 성질 확인")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(handler=cmd_closure)

    p = subparsers.add_parser("sim", help="예제 1 합 복호 시뮬레이션")
    p.add_argument("--n", type=int, default=24)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--delta1", default="0.01")
    p.add_argument("--tau1", default="1/90")
    p.add_argument("--tau", default="0.15")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--shaping-k", type=int, default=None, help="성형 행 수 (기본: 덮개 차원)")
    p.add_argument("--encoder", choices=ENCODERS, default="coset")
    p.set_defaults(handler=cmd_sim)
