"""启动脚本"""

import sys

from lie_sw.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
