import sys
from pathlib import Path

# 让 tests/ 直接导入 lie_sw 包
sys.path.insert(0, str(Path(__file__).resolve().parent))
