"""度量李代数分析流程编排"""

import asyncio
import time
from itertools import product
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from ..config import Settings, get_settings
from ..core.field import FieldScalar
from ..core.matrix import DimensionMismatchError
from ..models.schemas import (
    AnalysisReport,
    CheckReport,
    ComplexPairReport,
    EigenReport,
    ExactValue,
    FamilyReport,
    IdentityReport,
    LinearReductionReport,
    PredicateReport,
    RealEigenReport,
    SolutionSummary,
    SystemReport,
    TensorEntry,
    InputDocument,
)
from ..services.classification import (
    EigenData,
    MetricVariant,
    SegreIndeterminateError,
    SegreType,
    canonical_pair,
    check_signature_admissible,
    is_neutral_only,
    predicates,
    ricci_eigendata,
    ricci_operator,
    segre_type,
    sign_cases,
    segre_consistent,
)
from ..services.constraints import (
    SECTIONS,
    ConstraintSystem,
    assemble_system,
    reduce_sw_linear,
    ricci_parallel_on_solution,
    solve_small,
    verify_family,
)
from ..services.curvature import CurvatureReport, Metric, compute_curvature
from ..services.lie_algebra import LieAlgebra
from ..utils.input_parser import build_algebra, build_metric


class MetricLieAnalyzer:
    """度量李代数分析器: 曲率、Segre 分类、恒等式检查与约束方程组"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        logger.debug(
            f"初始化分析器: 精度 {self.settings.segre_tolerance:g}, "
            f"并行符号分支 {'是' if self.settings.parallel_cases else '否'}"
        )

    # ============ 单个度量李代数 ============

    def analyze(self, document: InputDocument) -> AnalysisReport:
        """
        分析输入文档描述的度量李代数

        Raises:
            JacobiViolationError: 结构常数不满足 Jacobi 恒等式
            DegenerateMetricError: 度量退化
        """
        algebra = build_algebra(document).require_valid()
        metric = build_metric(document)
        return self.analyze_algebra(algebra, metric)

    def analyze_algebra(self, algebra: LieAlgebra, metric: Metric) -> AnalysisReport:
        _require_dim4(algebra)
        start_time = time.time()
        logger.info(f"开始分析度量李代数: dim={algebra.dim}, 号差 {metric.signature}")

        jacobi_ok = algebra.jacobi_check().ok
        curvature = compute_curvature(algebra, metric)
        report = self._build_report(algebra, metric, curvature, jacobi_ok)

        report.elapsed = time.time() - start_time
        logger.success(
            f"分析完成: Segre {report.segre or '?'}, SW=0 {report.predicates.sw_zero}, "
            f"耗时: {report.elapsed:.2f}秒"
        )
        return report

    def check_identities(self, document: InputDocument) -> CheckReport:
        """只做 SW 与 div W 的恒等式检查以及 SW = 0 与 Codazzi 对称性的一致性检查"""
        algebra = build_algebra(document).require_valid()
        _require_dim4(algebra)
        metric = build_metric(document)
        curvature = compute_curvature(algebra, metric)
        identities = self._identity_report(curvature)
        if not identities.passed:
            logger.warning("恒等式检查未通过")
        return CheckReport(identities=identities, jacobi_ok=True, passed=identities.passed)

    # ============ 解族 ============

    def family(
        self,
        a: Union[int, FieldScalar, str],
        delta: int = 1,
        eps2: int = 1,
        eps3: int = 1,
        variant: Union[str, MetricVariant] = MetricVariant.SIGN_FLIPPED,
        eps1: int = 1,
    ) -> FamilyReport:
        """
        在给定参数下验证 {1111~} 解族

        Raises:
            FamilyParameterError: a = 0 或符号不是 ±1
        """
        if isinstance(a, str):
            a = FieldScalar.parse(a, 3)
        result = verify_family(
            a, delta, eps2, eps3,
            variant=MetricVariant(variant),
            eps1=eps1,
            tolerance=self.settings.segre_tolerance,
        )
        analysis = self._build_report(result.algebra, result.metric, result.report, result.jacobi_ok, result.segre)
        analysis.elapsed = result.elapsed
        digits = self.settings.decimal_digits
        return FamilyReport(
            a=ExactValue.of(result.a, digits),
            delta=delta,
            signs=list(result.signs),
            metric_variant=result.variant.value,
            expected={k: ExactValue.of(v, digits) for k, v in result.expected.items()},
            operator_entries_match=result.operator_entries_match,
            eigen_match=result.eigen_match,
            complex_pair_present=result.complex_pair_present,
            reproduces_family=result.reproduces_family,
            analysis=analysis,
        )

    # ============ 约束方程组 ============

    def generate_system(
        self,
        segre: Union[str, SegreType],
        signs: Sequence[int],
        variant: Union[str, MetricVariant] = MetricVariant.SIGN_FLIPPED,
        reduce: bool = False,
        solve: Optional[str] = None,
        sections: Sequence[str] = SECTIONS,
    ) -> Tuple[ConstraintSystem, SystemReport]:
        """
        组装一个符号组合下的方程组

        reduce 时附上 SW 方程的线性约化; solve 给出策略时再做 Gröbner 求解。

        Raises:
            UnsupportedSegreTypeError: 该 Segre 类型没有实现标准对
        """
        pair = canonical_pair(segre, tuple(signs), MetricVariant(variant))
        system = assemble_system(pair)
        return system, self._system_report(system, reduce, solve, sections)

    def analyze_sign_cases(
        self,
        segre: Union[str, SegreType],
        variant: Union[str, MetricVariant] = MetricVariant.SIGN_FLIPPED,
        reduce: bool = False,
        solve: Optional[str] = None,
        sections: Sequence[str] = SECTIONS,
    ) -> List[Tuple[ConstraintSystem, SystemReport]]:
        """
        对所有 ε 符号组合组装方程组, 结果按符号组合的固定顺序返回

        parallel_cases 打开时各组合在线程池中并行计算。
        """
        start_time = time.time()
        cases = sign_cases(segre)
        logger.info(f"开始组装 {segre} 的 {len(cases)} 个符号分支...")

        if self.settings.parallel_cases and len(cases) > 1:
            loop = asyncio.new_event_loop()
            asyncio.set_event_loop(loop)
            try:
                results = loop.run_until_complete(self._sign_cases_async(segre, cases, variant, reduce, solve, sections))
            finally:
                loop.close()
        else:
            results = [self.generate_system(segre, signs, variant, reduce, solve, sections) for signs in cases]

        elapsed = time.time() - start_time
        logger.success(f"符号分支组装完成: {len(results)} 个, 耗时: {elapsed:.2f}秒")
        return results

    async def _sign_cases_async(
        self,
        segre: Union[str, SegreType],
        cases: Sequence[Tuple[int, ...]],
        variant: Union[str, MetricVariant],
        reduce: bool,
        solve: Optional[str],
        sections: Sequence[str],
    ) -> List[Tuple[ConstraintSystem, SystemReport]]:
        loop = asyncio.get_event_loop()
        tasks = [
            loop.run_in_executor(None, self.generate_system, segre, signs, variant, reduce, solve, sections)
            for signs in cases
        ]
        responses = await asyncio.gather(*tasks, return_exceptions=True)

        for signs, response in zip(cases, responses):
            if isinstance(response, Exception):
                logger.error(f"符号分支 {signs} 失败: {response}")
                raise response
        return list(responses)

    def solve(self, system: ConstraintSystem, strategy: str = "linear-then-gb", sections: Sequence[str] = SECTIONS) -> SolutionSummary:
        """在当前配置的预算与单项式序下求解; 预算耗尽不抛出"""
        result = solve_small(
            system,
            strategy=strategy,
            sections=sections,
            order=self.settings.gb_order,
            budget=self.settings.gb_budget,
            max_budget=self.settings.gb_max_budget,
        )
        if result.budget_exhausted:
            logger.warning(f"{system.pair.describe()}: Gröbner 预算耗尽, 只输出方程组")
        return SolutionSummary(
            strategy=result.strategy,
            sections=list(result.sections),
            saturated=result.saturated,
            budget_exhausted=result.budget_exhausted,
            inconsistent=result.inconsistent,
            basis=[str(g) for g in result.basis or []],
        )

    def _system_report(
        self,
        system: ConstraintSystem,
        reduce: bool,
        solve: Optional[str] = None,
        sections: Sequence[str] = SECTIONS,
    ) -> SystemReport:
        pair = system.pair
        reduction = None
        if reduce:
            linear = reduce_sw_linear(system)
            reduction = LinearReductionReport(
                rank=linear.rank,
                forced_zero=list(linear.forced_zero),
                relations=[str(p) for p in linear.relations],
                conditions=[str(p) for p in linear.conditions],
                ricci_parallel=ricci_parallel_on_solution(system, linear),
            )
            logger.info(
                f"{pair.describe()}: 秩 {linear.rank}, {len(linear.forced_zero)} 个结构常数被迫为零, "
                f"{len(linear.relations)} 条关系"
            )
        return SystemReport(
            segre=pair.segre.render(),
            signs=list(pair.signs),
            metric_variant=pair.variant.value if pair.variant is not None else None,
            assumptions=[str(a) for a in pair.assumptions],
            sections={name: [str(p) for p in polys] for name, polys in system.sections().items()},
            reduction=reduction,
            solution=self.solve(system, solve, sections) if solve else None,
        )

    # ============ 报告组装 ============

    def _tensor_entries(self, tensor: np.ndarray) -> List[TensorEntry]:
        digits = self.settings.decimal_digits
        entries = []
        for idx in product(*(range(n) for n in tensor.shape)):
            value = tensor[idx]
            if value:
                entries.append(TensorEntry(
                    index=[i + 1 for i in idx],
                    value=ExactValue.of(FieldScalar.of(value), digits),
                ))
        return entries

    def _exact(self, value: Optional[FieldScalar]) -> Optional[ExactValue]:
        return ExactValue.of(value, self.settings.decimal_digits) if value is not None else None

    def _approx(self, value: float) -> str:
        if value == 0:
            return "0"
        return format(value, f".{self.settings.decimal_digits}g")

    def _eigen_report(self, data: EigenData) -> EigenReport:
        return EigenReport(
            real=[
                RealEigenReport(value=self._exact(e.exact), approx=self._approx(e.approx), multiplicity=e.multiplicity)
                for e in data.real
            ],
            complex_pairs=[
                ComplexPairReport(
                    alpha=self._exact(p.alpha),
                    beta=self._exact(p.beta),
                    approx_alpha=self._approx(p.approx_alpha),
                    approx_beta=self._approx(p.approx_beta),
                    multiplicity=p.multiplicity,
                )
                for p in data.complex_pairs
            ],
        )

    @staticmethod
    def _identity_report(curvature: CurvatureReport) -> IdentityReport:
        divergence = curvature.identity_holds
        codazzi = curvature.codazzi_holds
        sw_zero = curvature.sw_zero
        equivalence = sw_zero == codazzi
        return IdentityReport(
            divergence_identity=divergence,
            codazzi_symmetry=codazzi,
            sw_zero=sw_zero,
            equivalence=equivalence,
            passed=divergence and equivalence,
        )

    def _build_report(
        self,
        algebra: LieAlgebra,
        metric: Metric,
        curvature: CurvatureReport,
        jacobi_ok: bool,
        segre: Optional[SegreType] = None,
    ) -> AnalysisReport:
        tolerance = self.settings.segre_tolerance
        rho = ricci_operator(curvature.ricci, metric)
        if segre is None:
            try:
                segre = segre_type(rho, tolerance)
            except SegreIndeterminateError as e:
                logger.warning(f"Segre 类型无法判定: {e}")

        if segre is not None:
            consistent = segre_consistent(curvature, segre, tolerance)
            admissible = check_signature_admissible(segre, metric)
        else:
            p = predicates(curvature)
            consistent = not (p.sw_zero and not p.einstein and not p.conformally_flat and not p.ricci_parallel)
            admissible = True
        if not consistent:
            logger.warning(f"SW = 0 的非平凡度量李代数出现了列表外的 Segre 类型 {segre.render() if segre else '?'}")

        p = predicates(curvature)
        return AnalysisReport(
            app_version=self.settings.app_version,
            dim=algebra.dim,
            field_sqrt=algebra.d,
            signature=list(metric.signature),
            jacobi_ok=jacobi_ok,
            christoffel=self._tensor_entries(curvature.Gamma),
            riemann=self._tensor_entries(curvature.R),
            ricci=self._tensor_entries(curvature.ricci),
            scalar=ExactValue.of(FieldScalar.of(curvature.scalar), self.settings.decimal_digits),
            one_dim_curvature=self._tensor_entries(curvature.A),
            weyl=self._tensor_entries(curvature.W),
            schouten_weyl=self._tensor_entries(curvature.SW),
            div_weyl=self._tensor_entries(curvature.divW),
            nabla_ricci=self._tensor_entries(curvature.nabla_r),
            predicates=PredicateReport(**p.as_dict()),
            segre=segre.render() if segre is not None else None,
            segre_human=segre.human() if segre is not None else None,
            neutral_only=is_neutral_only(segre) if segre is not None else False,
            signature_admissible=admissible,
            segre_consistent=consistent,
            eigen=self._eigen_report(ricci_eigendata(rho, algebra.d)),
            identities=self._identity_report(curvature),
        )


def _require_dim4(algebra: LieAlgebra):
    # Segre 目录与散度恒等式只对四维成立
    if algebra.dim != 4:
        raise DimensionMismatchError(f"分类与恒等式检查只支持 dim = 4, 实际为 {algebra.dim}")


# 全局分析器实例
_analyzer = None


def get_analyzer() -> MetricLieAnalyzer:
    """获取分析器实例(单例模式)"""
    global _analyzer

    if _analyzer is None:
        _analyzer = MetricLieAnalyzer()

    return _analyzer
