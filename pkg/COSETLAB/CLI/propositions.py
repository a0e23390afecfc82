"""
명제 판정 명령 (props, c1, prop3, ex3)

기본값은 모두 논의된 파라미터 점
"""
import logging
from fractions import Fraction
from typing import List

from COSETLAB.CLI.output import CommandOutput
from COSETLAB.schemas.report import Prop3Report, PropositionReport, PropositionSuite
from COSETLAB.services.channel_models import make_ex2
from COSETLAB.services.region_analysis import (
    IcParams,
    check_ex3_simultaneity,
    check_prop1,
    check_prop2,
    check_prop3,
    check_prop4,
    check_prop5,
    compute_c1,
)
from COSETLAB.utils.parsing import parse_fraction, parse_prob

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
REPORT_HEADER = ("name", "lhs", "rhs", "margin", "verdict")


def open_half(text: str, name: str) -> float:
    """(0, 0.5)"""
    return parse_prob(text, name, open_low=True, open_high=True, upper=HALF)


def half_open_half(text: str, name: str) -> float:
    """[0, 0.5)"""
    return parse_prob(text, name, open_high=True, upper=HALF)


def _report_line(r: PropositionReport) -> str:
    verdict = "✅ PASS" if r.verdict else "❌ FAIL"
    return f"{r.name:<12} lhs={r.lhs:.6f}  rhs={r.rhs:.6f}  margin={r.margin:+.6f}  {verdict}"


def _report_rows(reports: List[PropositionReport]) -> List[list]:
    return [[r.name, r.lhs, r.rhs, r.margin, r.verdict] for r in reports]


# ============================================
# 핸들러
# ============================================

def cmd_props(args) -> CommandOutput:
    """명제 1, 2 (와 같은 값의 4, 5)"""
    params = IcParams(
        tau1=open_half(args.tau1, "tau1"),
        tau=open_half(args.tau, "tau"),
        delta1=open_half(args.delta1, "delta1"),
        delta=open_half(args.delta, "delta"),
    )
    strict_eps = float(parse_fraction(args.strict_eps))
    reports = [
        check_prop1(params, strict_eps=strict_eps),
        check_prop2(params),
        check_prop4(params, strict_eps=strict_eps),
        check_prop5(params),
    ]
    lines = [_report_line(r) for r in reports]
    lines.append(f"θ = {reports[1].intermediates['theta']:.6f}, β = {params.beta:.6f}")
    return CommandOutput(
        text="\n".join(lines),
        structured=PropositionSuite(reports=reports),
        csv_header=REPORT_HEADER,
        csv_rows=_report_rows(reports),
    )


def cmd_c1(args) -> CommandOutput:
    """C₁ 과 최적 P(X₁=1)"""
    tau1 = half_open_half(args.tau1, "tau1")
    tau = open_half(args.tau, "tau")
    ch = make_ex2(delta=open_half(args.delta, "delta"))
    result = compute_c1(ch, tau1, tau)
    text = (
        f"C₁ = {result.c1:.6f} bits\n"
        f"p*(X₁=1) = {result.p_star_x1_1:.6f}, p*(X₁=0) = {1 - result.p_star_x1_1:.6f}\n"
        f"황금분할 반복 {result.iterations}회 (허용오차 {result.optimizer_tolerance:g})"
    )
    return CommandOutput(
        text=text,
        structured=result,
        csv_header=("c1", "p_star_x1_1", "iterations", "optimizer_tolerance"),
        csv_rows=[[result.c1, result.p_star_x1_1, result.iterations, result.optimizer_tolerance]],
    )


def cmd_prop3(args) -> CommandOutput:
    """명제 3: G_A, G_B"""
    tau1 = half_open_half(args.tau1, "tau1")
    tau = open_half(args.tau, "tau")
    delta = open_half(args.delta, "delta")
    ch = make_ex2(delta=delta)
    c1 = compute_c1(ch, tau1, tau)
    report_a, report_b = check_prop3(ch, tau1, tau, delta, c1=c1)
    report = Prop3Report(c1=c1, iid_gap=report_a, coset_slack=report_b)
    text = "\n".join([
        f"C₁ = {c1.c1:.6f} at p*(X₁=0) = {1 - c1.p_star_x1_1:.4f}",
        f"G_A = {report_a.intermediates['G_A']:+.4f}",
        f"G_B = {report_b.intermediates['G_B']:+.4f}",
        _report_line(report_a),
        _report_line(report_b),
    ])
    return CommandOutput(
        text=text,
        structured=report,
        csv_header=REPORT_HEADER,
        csv_rows=_report_rows([report_a, report_b]),
    )


def cmd_ex3(args) -> CommandOutput:
    """예제 3: 세 수신기 동시 달성"""
    report = check_ex3_simultaneity(
        beta=open_half(args.beta, "beta"),
        delta=open_half(args.delta, "delta"),
        tau=half_open_half(args.tau, "tau"),
    )
    lines = []
    for rc in report.receivers:
        rates = ", ".join(f"{k}={v:.6f}" for k, v in rc.rates.items())
        verdict = "✅ PASS" if rc.verdict else "❌ FAIL"
        lines.append(f"Rx{rc.receiver}: {rates}  B={rc.bound:.6f}  margin={rc.margin:+.6f}  {verdict}")
    lines.append(f"동시 달성: {'✅' if report.verdict else '❌'}")
    return CommandOutput(
        text="\n".join(lines),
        structured=report,
        csv_header=("receiver", "bound", "margin", "verdict"),
        csv_rows=[[rc.receiver, rc.bound, rc.margin, rc.verdict] for rc in report.receivers],
    )


# ============================================
# 등록
# ============================================

def register(subparsers) -> None:
    p = subparsers.add_parser("props", help="명제 1/2 (4/5) 판정")
    p.add_argument("--tau1", default="1/90")
    p.add_argument("--tau", default="0.15")
    p.add_argument("--delta1", default="0.01")
    p.add_argument("--delta", default="0.067")
    p.add_argument("--strict-eps", dest="strict_eps", default="0")
    p.set_defaults(handler=cmd_props)

    p = subparsers.add_parser("c1", help="C₁ 최적화 (예제 2)")
    p.add_argument("--tau1", default="0.01")
    p.add_argument("--tau", default="0.1525")
    p.add_argument("--delta", default="0.067")
    p.set_defaults(handler=cmd_c1)

    p = subparsers.add_parser("prop3", help="명제 3 (G_A, G_B)")
    p.add_argument("--tau1", default="0.01")
    p.add_argument("--tau", default="0.1525")
    p.add_argument("--delta", default="0.067")
    p.set_defaults(handler=cmd_prop3)

    p = subparsers.add_parser("ex3", help="예제 3 동시 달성 판정")
    p.add_argument("--beta", default="0.221")
    p.add_argument("--delta", default="0.1")
    p.add_argument("--tau", default="0.1284")
    p.set_defaults(handler=cmd_ex3)
