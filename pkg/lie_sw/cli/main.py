"""命令行主程序"""

import argparse
import sys
from typing import List, Optional, Tuple

from loguru import logger

from .. import __version__
from ..agents.analyzer import MetricLieAnalyzer
from ..config import REPORT_FORMATS, Settings, get_settings, print_config, validate_config
from ..models.schemas import ErrorReport
from ..services.classification import UnsupportedSegreTypeError
from ..services.constraints import FamilyParameterError
from ..services.curvature import DegenerateMetricError
from ..services.lie_algebra import JacobiViolationError
from ..utils.input_parser import InputParseError
from ..utils.logger import setup_logger
from .commands import CommandResult, analyze, check, family, gen_system
from .exit_codes import (
    EXIT_DEGENERATE_METRIC,
    EXIT_FAMILY_PARAMETER,
    EXIT_IDENTITY_FAILED,
    EXIT_INTERNAL_ERROR,
    EXIT_JACOBI_VIOLATION,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_UNSUPPORTED_SEGRE,
)
from .render import render_error_text, render_json

# 按顺序匹配, 子类在前
_ERROR_TABLE = (
    (JacobiViolationError, EXIT_JACOBI_VIOLATION, "jacobi_violation"),
    (DegenerateMetricError, EXIT_DEGENERATE_METRIC, "degenerate_metric"),
    (FamilyParameterError, EXIT_FAMILY_PARAMETER, "invalid_family_parameter"),
    (UnsupportedSegreTypeError, EXIT_UNSUPPORTED_SEGRE, "unsupported_segre_type"),
    (InputParseError, EXIT_PARSE_ERROR, "parse_error"),
    (ValueError, EXIT_PARSE_ERROR, "invalid_argument"),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lie-sw",
        description="四维度量李群的左不变曲率、Schouten-Weyl 张量与 Ricci 算子 Segre 分类",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=REPORT_FORMATS, help="输出格式, 默认取配置 REPORT_FORMAT")
    parser.add_argument("--tolerance", type=float, help="Segre 数值判定精度, 默认 1e-9")
    parser.add_argument("--gb-budget", type=int, help="Gröbner 初始约化步数预算")
    parser.add_argument("--log-level", help="日志级别")
    parser.add_argument("--serial", action="store_true", help="符号分支串行计算")
    parser.add_argument("--show-config", action="store_true", help="启动时打印当前配置")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (analyze, family, gen_system, check):
        command.register(subparsers)
    return parser


def settings_from_args(args: argparse.Namespace, base: Optional[Settings] = None) -> Settings:
    """命令行参数覆盖配置, 并验证结果"""
    base = base or get_settings()
    update = {}
    if args.format is not None:
        update["report_format"] = args.format
    if args.tolerance is not None:
        update["segre_tolerance"] = args.tolerance
    if args.gb_budget is not None:
        update["gb_budget"] = args.gb_budget
        update["gb_max_budget"] = max(base.gb_max_budget, args.gb_budget)
    if args.log_level is not None:
        update["log_level"] = args.log_level
    if args.serial:
        update["parallel_cases"] = False
    settings = base.model_copy(update=update)
    validate_config(settings)
    return settings


def classify_error(error: Exception) -> Tuple[int, str]:
    """异常 → (退出码, 错误代码)"""
    for exc_type, exit_code, error_code in _ERROR_TABLE:
        if isinstance(error, exc_type):
            return exit_code, error_code
    return EXIT_INTERNAL_ERROR, "internal_error"


def error_report(error: Exception) -> ErrorReport:
    exit_code, error_code = classify_error(error)
    details: List[str] = []
    if isinstance(error, JacobiViolationError):
        details = [v.describe() for v in error.violations]
    elif isinstance(error, UnsupportedSegreTypeError):
        details = [f"supported: {s}" for s in error.supported]
    return ErrorReport(message=str(error), error_code=error_code, exit_code=exit_code, details=details)


def main(argv: Optional[List[str]] = None) -> int:
    """
    命令行入口

    Returns:
        退出码: 0 成功, 1 恒等式检查失败, 2 解析错误, 3 Jacobi 不成立,
        4 度量退化, 5 a = 0, 6 不支持的 Segre 类型, 70 内部错误
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logger(args.log_level)

    fmt = args.format or get_settings().report_format
    with logger.contextualize(command=args.command):
        try:
            settings = settings_from_args(args)
            fmt = settings.report_format
            if args.show_config:
                print_config(settings)
            analyzer = MetricLieAnalyzer(settings)
            args.format = fmt
            result: CommandResult = args.handler(args, analyzer)
        except Exception as e:
            report = error_report(e)
            if report.error_code == "internal_error":
                logger.exception(f"执行失败: {e}")
            else:
                logger.error(f"失败: {e}")
            sys.stderr.write(render_json(report) if fmt == "json" else render_error_text(report))
            return report.exit_code

    sys.stdout.write(result.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
