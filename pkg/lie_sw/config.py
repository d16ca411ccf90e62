"""配置管理模块"""

from loguru import logger
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

from .core.field import is_square_free
from .core.poly import MONOMIAL_ORDERS

# 加载环境变量
load_dotenv()

REPORT_FORMATS = ("text", "json")

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """应用配置"""

    # 应用基本配置
    app_name: str = "lie-sw"
    app_version: str = "1.0.0"

    # 数域与数值判定
    field_sqrt: int = 1
    segre_tolerance: float = 1e-9
    decimal_digits: int = 12

    # Gröbner 计算
    gb_budget: int = 100000
    gb_max_budget: int = 1000000
    gb_order: str = "grevlex"

    # 输出与并行
    report_format: str = "text"
    parallel_cases: bool = True

    # 日志配置
    log_level: str = "INFO"
    log_to_file: bool = False
    log_dir: str = "logs"

    class Config:
        env_file = ".env"
        env_prefix = "LIE_SW_"
        case_sensitive = False
        extra = "ignore"  # 忽略额外的环境变量


# 创建全局配置实例
settings = Settings()


def get_settings() -> Settings:
    """获取配置实例"""
    return settings


def validate_config(config: Settings = None):
    """验证配置是否合法, 列出所有错误"""
    config = config or settings
    errors = []

    if config.field_sqrt < 0 or not is_square_free(config.field_sqrt):
        errors.append(f"FIELD_SQRT={config.field_sqrt} 必须是无平方因子的非负整数")
    if config.segre_tolerance <= 0:
        errors.append("SEGRE_TOLERANCE 必须为正数")
    if config.decimal_digits < 1:
        errors.append("DECIMAL_DIGITS 必须至少为 1")
    if config.gb_budget <= 0:
        errors.append("GB_BUDGET 必须为正整数")
    if config.gb_budget > config.gb_max_budget:
        errors.append(f"GB_BUDGET={config.gb_budget} 超过 GB_MAX_BUDGET={config.gb_max_budget}")
    if config.gb_order not in MONOMIAL_ORDERS:
        errors.append(f"GB_ORDER={config.gb_order} 不是已知的单项式序 {MONOMIAL_ORDERS}")
    if config.report_format not in REPORT_FORMATS:
        errors.append(f"REPORT_FORMAT={config.report_format} 只能是 {REPORT_FORMATS}")
    if config.log_level.upper() not in LOG_LEVELS:
        errors.append(f"LOG_LEVEL={config.log_level} 不是已知的日志级别")

    if errors:
        error_msg = "配置错误:\n" + "\n".join(f"  - {e}" for e in errors)
        raise ValueError(error_msg)

    return True


def print_config(config: Settings = None):
    """打印当前配置"""
    config = config or settings
    logger.info(f"应用名称: {config.app_name}")
    logger.info(f"版本: {config.app_version}")
    logger.info(f"默认数域: Q(sqrt({config.field_sqrt}))")
    logger.info(f"Segre 数值精度: {config.segre_tolerance:g}")
    logger.info(f"Gröbner 预算: {config.gb_budget} (上限 {config.gb_max_budget}), 单项式序 {config.gb_order}")
    logger.info(f"输出格式: {config.report_format}, 并行符号分支: {'是' if config.parallel_cases else '否'}")
    logger.info(f"日志级别: {config.log_level}")
