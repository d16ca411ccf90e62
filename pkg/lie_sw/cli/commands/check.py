"""check-identities 子命令"""

import argparse

from ...agents.analyzer import MetricLieAnalyzer
from ...utils.input_parser import load_document
from ..render import render_check_text, render_json
from ..exit_codes import EXIT_IDENTITY_FAILED, EXIT_OK
from . import CommandResult


def register(subparsers):
    parser = subparsers.add_parser(
        "check-identities",
        help="检查 SW 与 div W 的恒等式, 以及 SW = 0 与 ∇r 的 Codazzi 对称性是否一致",
    )
    parser.add_argument("file", help="输入文件")
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace, analyzer: MetricLieAnalyzer) -> CommandResult:
    report = analyzer.check_identities(load_document(args.file))
    output = render_json(report) if args.format == "json" else render_check_text(report)
    return CommandResult(output, EXIT_OK if report.passed else EXIT_IDENTITY_FAILED)
