"""family 子命令: 在给定参数下验证 {1111~} 解族"""

import argparse
from pathlib import Path

from loguru import logger

from ...agents.analyzer import MetricLieAnalyzer
from ...core.field import FieldScalar
from ...services.classification import MetricVariant
from ...services.constraints import family_algebra, family_metric
from ...utils.input_parser import InputParseError, document_from_algebra, render_document
from ..render import render_family_text, render_json
from . import CommandResult


def register(subparsers):
    parser = subparsers.add_parser(
        "family",
        help="构造解族并验证 SW = 0、非 Einstein、非共形平坦、非 Ricci 平行与特征数据",
    )
    parser.add_argument("--a", default="1", help="非零参数 a, 例如 1、1/2、2*sqrt(3)")
    parser.add_argument("--delta", type=int, choices=(1, -1), default=1)
    parser.add_argument("--eps1", type=int, choices=(1, -1), default=1)
    parser.add_argument("--eps2", type=int, choices=(1, -1), default=1)
    parser.add_argument("--eps3", type=int, choices=(1, -1), default=1)
    parser.add_argument(
        "--metric-variant",
        choices=[v.value for v in MetricVariant],
        default=MetricVariant.SIGN_FLIPPED.value,
        help="(e3, e4) 度量块: sign-flipped 为 diag(ε3, −ε3), literal 为 diag(ε3, ε3)",
    )
    parser.add_argument("--write-input", metavar="FILE", help="同时把该度量李代数写成输入文件")
    parser.set_defaults(handler=run)
    return parser


def _parse_a(text: str) -> FieldScalar:
    try:
        return FieldScalar.parse(text, 3)
    except ValueError as e:
        raise InputParseError(f"--a 无法解析: {e}")


def run(args: argparse.Namespace, analyzer: MetricLieAnalyzer) -> CommandResult:
    a = _parse_a(args.a)
    report = analyzer.family(a, args.delta, args.eps2, args.eps3, args.metric_variant, eps1=args.eps1)

    if args.write_input:
        document = document_from_algebra(
            family_algebra(a, args.delta, args.eps2, args.eps3),
            family_metric(args.eps1, args.eps2, args.eps3, args.metric_variant),
            params={
                "a": a.to_exact_string(),
                "delta": str(args.delta),
                "eps1": str(args.eps1),
                "eps2": str(args.eps2),
                "eps3": str(args.eps3),
            },
        )
        Path(args.write_input).write_text(render_document(document), encoding="utf-8")
        logger.info(f"解族输入文件已写入: {args.write_input}")

    if args.format == "json":
        return CommandResult(render_json(report))
    return CommandResult(render_family_text(report))
