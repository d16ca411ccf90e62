"""数据模型定义"""

from typing import Dict, List, Optional
from pydantic import BaseModel, Field, field_validator, model_validator

from ..core.field import FieldScalar

SCHEMA_VERSION = "1"

PARAM_NAMES = ("a", "delta", "eps1", "eps2", "eps3", "eps4")


# ============ 输入模型 ============

class StructureConstant(BaseModel):
    """一个结构常数 C_ij^k(1 起始, i < j)"""
    i: int = Field(..., description="第一个下标", ge=1)
    j: int = Field(..., description="第二个下标", ge=1)
    k: int = Field(..., description="上标", ge=1)
    value: str = Field(..., description="精确值 p/q+r/s*sqrt(d)", examples=["-sqrt(3)"])

    @model_validator(mode="after")
    def check_order(self):
        if self.i >= self.j:
            raise ValueError(f"结构常数只接受 i < j: C {self.i} {self.j} {self.k}")
        return self


class InputDocument(BaseModel):
    """度量李代数输入文档"""
    dim: int = Field(default=4, description="维数", ge=3)
    field_sqrt: int = Field(default=1, description="数域 Q(sqrt(d)) 的 d", ge=0)
    metric: List[List[str]] = Field(..., description="度量矩阵(精确值字符串)")
    metric_is_diagonal: bool = Field(default=True, description="输出时是否使用 diag(...) 简写")
    constants: List[StructureConstant] = Field(default_factory=list, description="非零结构常数")
    params: Dict[str, str] = Field(default_factory=dict, description="参数绑定 a, delta, eps1..eps4")

    class Config:
        json_schema_extra = {
            "example": {
                "dim": 4,
                "field_sqrt": 3,
                "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "-1"]],
                "constants": [{"i": 2, "j": 3, "k": 3, "value": "-sqrt(3)"}, {"i": 2, "j": 3, "k": 4, "value": "1"}],
            }
        }

    @field_validator("params")
    @classmethod
    def check_params(cls, v: Dict[str, str]) -> Dict[str, str]:
        unknown = [k for k in v if k not in PARAM_NAMES]
        if unknown:
            raise ValueError(f"未知的参数: {unknown}")
        return v

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.metric) != self.dim or any(len(row) != self.dim for row in self.metric):
            raise ValueError(f"度量矩阵必须是 {self.dim}×{self.dim}")
        for c in self.constants:
            if max(c.i, c.j, c.k) > self.dim:
                raise ValueError(f"结构常数下标超出维数 {self.dim}: C {c.i} {c.j} {c.k}")
        return self


# ============ 报告模型 ============

class ExactValue(BaseModel):
    """精确值与十进制近似"""
    exact: str = Field(..., description="精确值")
    decimal: str = Field(..., description="十进制近似")

    @classmethod
    def of(cls, value: FieldScalar, digits: int = 12) -> "ExactValue":
        return cls(exact=value.to_exact_string(), decimal=value.to_decimal_string(digits))


class TensorEntry(BaseModel):
    """张量的一个非零分量"""
    index: List[int] = Field(..., description="分量下标(1 起始)")
    value: ExactValue = Field(..., description="分量值")


class PredicateReport(BaseModel):
    """曲率判别谓词"""
    einstein: bool = Field(..., description="r = λg")
    conformally_flat: bool = Field(..., description="W = 0")
    ricci_parallel: bool = Field(..., description="∇r = 0")
    sw_zero: bool = Field(..., description="SW = 0")
    locally_symmetric: bool = Field(..., description="∇R = 0")


class RealEigenReport(BaseModel):
    """实特征值"""
    value: Optional[ExactValue] = Field(default=None, description="精确值(在数域内时)")
    approx: str = Field(..., description="十进制近似")
    multiplicity: int = Field(..., description="代数重数")


class ComplexPairReport(BaseModel):
    """共轭复特征值对 α ± iβ"""
    alpha: Optional[ExactValue] = Field(default=None, description="实部")
    beta: Optional[ExactValue] = Field(default=None, description="虚部(正)")
    approx_alpha: str = Field(..., description="实部近似")
    approx_beta: str = Field(..., description="虚部近似")
    multiplicity: int = Field(..., description="代数重数")


class EigenReport(BaseModel):
    """Ricci 算子的特征数据"""
    real: List[RealEigenReport] = Field(default_factory=list, description="实特征值")
    complex_pairs: List[ComplexPairReport] = Field(default_factory=list, description="复特征值对")


class IdentityReport(BaseModel):
    """恒等式检查"""
    divergence_identity: bool = Field(..., description="SW = −(n−3)·div W")
    codazzi_symmetry: bool = Field(..., description="(∇_Z r)(X,Y) = (∇_Y r)(X,Z)")
    sw_zero: bool = Field(..., description="SW = 0")
    equivalence: bool = Field(..., description="SW = 0 与 Codazzi 对称性的判定一致")
    passed: bool = Field(..., description="全部通过")


class AnalysisReport(BaseModel):
    """度量李代数的完整分析报告"""
    schema_version: str = Field(default=SCHEMA_VERSION, description="报告格式版本")
    app_version: str = Field(..., description="程序版本")
    dim: int = Field(..., description="维数")
    field_sqrt: int = Field(..., description="数域 Q(sqrt(d)) 的 d")
    signature: List[int] = Field(..., description="度量惯性指数 [正, 负]")
    jacobi_ok: bool = Field(..., description="Jacobi 恒等式成立")
    christoffel: List[TensorEntry] = Field(default_factory=list, description="Γ^k_ij, 下标 [i, j, k]")
    riemann: List[TensorEntry] = Field(default_factory=list, description="R_ijkl")
    ricci: List[TensorEntry] = Field(default_factory=list, description="r_ij")
    scalar: ExactValue = Field(..., description="数量曲率 s")
    one_dim_curvature: List[TensorEntry] = Field(default_factory=list, description="A_ij")
    weyl: List[TensorEntry] = Field(default_factory=list, description="W_ijkl")
    schouten_weyl: List[TensorEntry] = Field(default_factory=list, description="SW_ijk")
    div_weyl: List[TensorEntry] = Field(default_factory=list, description="(div W)_ijk")
    nabla_ricci: List[TensorEntry] = Field(default_factory=list, description="(∇_k r)(e_i, e_j), 下标 [i, j, k]")
    predicates: PredicateReport = Field(..., description="判别谓词")
    segre: Optional[str] = Field(default=None, description="Segre 类型(机器格式), 无法判定时为空")
    segre_human: Optional[str] = Field(default=None, description="Segre 类型(人类可读)")
    neutral_only: bool = Field(default=False, description="该 Segre 类型是否只在中性号差下可能出现")
    signature_admissible: bool = Field(default=True, description="Segre 类型与度量号差相容")
    segre_consistent: bool = Field(default=True, description="满足 SW = 0 的非平凡情形 Segre 类型在允许列表内")
    eigen: EigenReport = Field(..., description="Ricci 特征数据")
    identities: IdentityReport = Field(..., description="恒等式检查")
    elapsed: float = Field(default=0.0, description="耗时(秒)", exclude=True)


class FamilyReport(BaseModel):
    """解族验证报告"""
    a: ExactValue = Field(..., description="参数 a")
    delta: int = Field(..., description="δ = ±1")
    signs: List[int] = Field(..., description="[ε1, ε2, ε3]")
    metric_variant: str = Field(..., description="度量块写法")
    expected: Dict[str, ExactValue] = Field(..., description="预期的 ρ1, ρ2, α, β")
    operator_entries_match: bool = Field(..., description="Ricci 算子矩阵与预期一致")
    eigen_match: bool = Field(..., description="特征数据与预期一致")
    complex_pair_present: bool = Field(..., description="存在共轭复特征值对")
    reproduces_family: bool = Field(..., description="完整复现解族的全部结论")
    analysis: AnalysisReport = Field(..., description="完整分析报告")


class LinearReductionReport(BaseModel):
    """SW 方程的线性约化摘要"""
    rank: int = Field(..., description="秩")
    forced_zero: List[str] = Field(default_factory=list, description="被迫为零的结构常数")
    relations: List[str] = Field(default_factory=list, description="剩余线性关系")
    conditions: List[str] = Field(default_factory=list, description="依赖参数取值的剩余条件")
    ricci_parallel: Optional[bool] = Field(default=None, description="解空间上 ∇r ≡ 0")


class SolutionSummary(BaseModel):
    """小规模方程组的 Gröbner 求解摘要"""
    strategy: str = Field(..., description="求解策略")
    sections: List[str] = Field(..., description="参与求解的部分")
    saturated: bool = Field(..., description="是否加入 Rabinowitsch 饱和多项式")
    budget_exhausted: bool = Field(..., description="预算放大到上限后仍然耗尽")
    inconsistent: bool = Field(default=False, description="基为 {1}, 方程组无解")
    basis: List[str] = Field(default_factory=list, description="Gröbner 基")


class SystemReport(BaseModel):
    """约束方程组"""
    segre: str = Field(..., description="Segre 类型")
    signs: List[int] = Field(..., description="ε 取值")
    metric_variant: Optional[str] = Field(default=None, description="度量块写法")
    assumptions: List[str] = Field(default_factory=list, description="假设非零的因子")
    sections: Dict[str, List[str]] = Field(..., description="sw / jacobi / ricci 三部分方程")
    reduction: Optional[LinearReductionReport] = Field(default=None, description="线性约化")
    solution: Optional[SolutionSummary] = Field(default=None, description="Gröbner 求解")


class CheckReport(BaseModel):
    """恒等式检查报告"""
    identities: IdentityReport = Field(..., description="恒等式检查")
    jacobi_ok: bool = Field(..., description="Jacobi 恒等式成立")
    passed: bool = Field(..., description="全部通过")


# ============ 错误响应 ============

class ErrorReport(BaseModel):
    """错误报告"""
    success: bool = Field(default=False, description="是否成功")
    message: str = Field(..., description="错误消息")
    error_code: str = Field(..., description="错误代码")
    exit_code: int = Field(..., description="进程退出码")
    details: List[str] = Field(default_factory=list, description="详细信息, 例如 Jacobi 违反位置")
