"""gen-system 子命令: 输出标准 (g, r) 对的约束方程组"""

import argparse
import json
from pathlib import Path
from typing import Tuple

from loguru import logger

from ...agents.analyzer import MetricLieAnalyzer
from ...services.classification import MetricVariant, SegreType, sign_cases
from ...services.constraints import SECTIONS, STRATEGIES, dump_system
from ...utils.input_parser import InputParseError
from ..render import render_system_extras
from . import CommandResult


def register(subparsers):
    parser = subparsers.add_parser(
        "gen-system",
        help="生成 SW、Jacobi 与 Ricci 匹配方程组",
    )
    parser.add_argument("--segre", required=True, help='Segre 类型, 例如 "{(11)(11)}" 或 "{1111~}"')
    parser.add_argument("--signs", help="逗号分隔的 ε 取值, 例如 1,1,-1; 默认全为 +1")
    parser.add_argument("--all-signs", action="store_true", help="输出所有 ε 符号组合")
    parser.add_argument(
        "--metric-variant",
        choices=[v.value for v in MetricVariant],
        default=MetricVariant.SIGN_FLIPPED.value,
        help="只对 {1111~} 有意义",
    )
    parser.add_argument("--reduce", action="store_true", help="附上 SW 方程的线性约化")
    parser.add_argument("--solve", choices=STRATEGIES, help="用给定策略做 Gröbner 求解")
    parser.add_argument(
        "--sections",
        default=",".join(SECTIONS),
        help=f"参与求解的部分, 逗号分隔, 默认 {','.join(SECTIONS)}",
    )
    parser.add_argument("--output", metavar="FILE", help="写到文件而不是标准输出")
    parser.set_defaults(handler=run)
    return parser


def _parse_signs(text: str) -> Tuple[int, ...]:
    try:
        signs = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise InputParseError(f"--signs 必须是逗号分隔的 ±1: {text!r}")
    if any(s not in (1, -1) for s in signs):
        raise InputParseError(f"--signs 只接受 ±1: {text!r}")
    return signs


def _parse_sections(text: str) -> Tuple[str, ...]:
    sections = tuple(s.strip() for s in text.split(",") if s.strip())
    unknown = [s for s in sections if s not in SECTIONS]
    if not sections or unknown:
        raise InputParseError(f"--sections 只接受 {SECTIONS}, 实际为 {text!r}")
    return sections


def run(args: argparse.Namespace, analyzer: MetricLieAnalyzer) -> CommandResult:
    segre = SegreType.parse(args.segre)
    sections = _parse_sections(args.sections)
    options = dict(variant=args.metric_variant, reduce=args.reduce, solve=args.solve, sections=sections)

    if args.all_signs:
        results = analyzer.analyze_sign_cases(segre, **options)
    else:
        signs = _parse_signs(args.signs) if args.signs else None
        if signs is None:
            signs = sign_cases(segre)[0]
        results = [analyzer.generate_system(segre, signs, **options)]

    if args.format == "json":
        payload = [report.model_dump() for _, report in results]
        output = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    else:
        output = "\n".join(dump_system(system) + render_system_extras(report) for system, report in results)

    if args.output:
        Path(args.output).write_text(output, encoding="utf-8")
        logger.info(f"方程组已写入: {args.output}")
        return CommandResult("")
    return CommandResult(output)
