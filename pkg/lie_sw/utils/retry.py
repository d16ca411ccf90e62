"""重试机制工具: 预算逐级放大的 Gröbner 计算"""

from functools import wraps
from typing import Callable, Optional, TypeVar

from loguru import logger

from ..core.groebner import GroebnerBudgetExceeded

T = TypeVar('T')


class RetryError(Exception):
    """重试失败错误"""
    pass


def retry_with_budget_growth(
    max_retries: int = 3,
    initial_budget: int = 100000,
    max_budget: int = 1000000,
    exponential_base: float = 4.0,
    retryable_exceptions: Optional[tuple] = None
):
    """
    预算指数增长的重试装饰器

    被装饰函数必须接受关键字参数 budget。每次因预算耗尽失败后,
    预算乘以 exponential_base(不超过 max_budget)再试。

    Args:
        max_retries: 最大重试次数
        initial_budget: 初始预算(约化步数)
        max_budget: 预算上限
        exponential_base: 指数基数
        retryable_exceptions: 可重试的异常类型
    """
    if retryable_exceptions is None:
        retryable_exceptions = (GroebnerBudgetExceeded,)

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @wraps(func)
        def wrapper(*args, **kwargs) -> T:
            last_exception = None
            budget = min(kwargs.pop("budget", None) or initial_budget, max_budget)

            for attempt in range(max_retries + 1):
                try:
                    return func(*args, budget=budget, **kwargs)
                except retryable_exceptions as e:
                    last_exception = e

                    if attempt < max_retries and budget < max_budget:
                        budget = min(int(budget * exponential_base), max_budget)
                        logger.warning(
                            f"函数 {func.__name__} 预算不足 (尝试 {attempt + 1}/{max_retries + 1}): {str(e)}. "
                            f"以预算 {budget} 重试..."
                        )
                    else:
                        logger.error(
                            f"函数 {func.__name__} 在 {attempt + 1} 次尝试后仍然失败 (最终预算 {budget})"
                        )
                        break

            raise RetryError(f"函数 {func.__name__} 重试失败") from last_exception

        return wrapper
    return decorator
