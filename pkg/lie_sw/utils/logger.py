"""日志配置"""

import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from ..config import Settings, get_settings

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<magenta>{extra[command]}</magenta> | <cyan>{name}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[command]} | {name}:{function}:{line} - {message}"


def setup_logger(level: Optional[str] = None, settings: Optional[Settings] = None):
    """
    配置日志系统

    控制台输出写到 stderr, stdout 只留给报告与方程组输出。
    每条日志带当前子命令名 extra[command], 由 cli.main 用 contextualize 注入。
    """
    settings = settings or get_settings()

    handlers = [{
        "sink": sys.stderr,
        "format": CONSOLE_FORMAT,
        "level": (level or settings.log_level).upper(),
    }]

    # 文件输出只在显式开启时添加
    if settings.log_to_file:
        log_dir = Path(settings.log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        handlers.append({
            "sink": log_dir / "lie_sw_{time:YYYY-MM-DD}.log",
            "format": FILE_FORMAT,
            "level": "DEBUG",
            "rotation": "00:00",
            "retention": "30 days",
            "encoding": "utf-8",
        })

    # configure 会替换掉之前的全部处理器
    logger.configure(handlers=handlers, extra={"command": "-"})
    logger.debug("日志系统初始化完成")
    return logger
