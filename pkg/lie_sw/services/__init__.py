"""服务模块: 李代数、曲率、分类与约束方程组"""
