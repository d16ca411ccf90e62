"""分析流程编排"""
