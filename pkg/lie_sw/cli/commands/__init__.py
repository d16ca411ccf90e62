"""子命令"""

from dataclasses import dataclass


@dataclass
class CommandResult:
    """子命令的输出与退出码; 输出只在成功路径上写到 stdout"""

    output: str
    exit_code: int = 0
