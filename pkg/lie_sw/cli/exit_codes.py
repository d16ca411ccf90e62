"""命令行退出码"""

EXIT_OK = 0
EXIT_IDENTITY_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_JACOBI_VIOLATION = 3
EXIT_DEGENERATE_METRIC = 4
EXIT_FAMILY_PARAMETER = 5
EXIT_UNSUPPORTED_SEGRE = 6
# sysexits.h 的 EX_SOFTWARE, 与恒等式失败区分开
EXIT_INTERNAL_ERROR = 70
