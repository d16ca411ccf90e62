"""lie-sw: 四维度量李群的左不变曲率、Schouten-Weyl 张量与 Ricci 算子 Segre 分类"""

__version__ = "1.0.0"
