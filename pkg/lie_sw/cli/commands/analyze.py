"""analyze 子命令: 完整分析一个度量李代数输入文件"""

import argparse

from loguru import logger

from ...agents.analyzer import MetricLieAnalyzer
from ...utils.input_parser import load_document
from ..render import render_analysis_text, render_json
from . import CommandResult


def register(subparsers):
    parser = subparsers.add_parser(
        "analyze",
        help="计算曲率、判别谓词、Segre 类型与恒等式检查",
    )
    parser.add_argument("file", help="输入文件")
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace, analyzer: MetricLieAnalyzer) -> CommandResult:
    logger.info(f"分析输入文件: {args.file}")
    document = load_document(args.file)
    report = analyzer.analyze(document)
    if args.format == "json":
        return CommandResult(render_json(report))
    return CommandResult(render_analysis_text(report))
