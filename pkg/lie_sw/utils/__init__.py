"""工具模块: 日志、预算重试与输入文件解析"""
