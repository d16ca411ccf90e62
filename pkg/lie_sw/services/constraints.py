"""
约束服务: 把 Codazzi 形式的条件、Jacobi 恒等式与 Ricci 匹配
写成结构常数的多项式方程组, 并做线性约化、Gröbner 求解与解族验证
"""

import time
from dataclasses import dataclass, field
from functools import reduce as fold
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from ..core.field import FieldScalar, Number, ZERO
from ..core.groebner import buchberger
from ..core.linear import LinearReduction, reduce_linear
from ..core.poly import MultiPoly, PolyRing
from ..utils.retry import RetryError, retry_with_budget_growth
from .classification import (
    CanonicalPair,
    EigenData,
    MetricVariant,
    Predicates,
    SegreIndeterminateError,
    SegreType,
    canonical_pair,
    constraint_ring,
    predicates,
    ricci_eigendata,
    ricci_operator,
    segre_type,
    sign_cases,
)
from .curvature import (
    CurvatureReport,
    Metric,
    codazzi_defect,
    compute_curvature,
    levi_civita,
    nabla_ricci,
    ricci,
    riemann,
)
from .lie_algebra import LieAlgebra, jacobi_polynomials, structure_constant_name, structure_constant_names

SECTIONS = ("sw", "jacobi", "ricci")

STRATEGIES = ("linear-then-gb", "gb-only")


class FamilyParameterError(ValueError):
    """解族参数不合法(a = 0 或符号不是 ±1)"""
    pass


# ============ 方程生成 ============

def _as_poly(value: Any, ring: PolyRing) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value.in_ring(ring.union(value.ring))
    return ring.constant(value)


def _symbolic_connection(pair: CanonicalPair, ring: PolyRing):
    algebra = LieAlgebra.symbolic(ring, pair.metric.dim)
    return algebra, levi_civita(algebra, pair.metric, check=False)


def codazzi_equations(
    metric: Metric,
    r: np.ndarray,
    ring: Optional[PolyRing] = None,
) -> List[Tuple[Tuple[int, int, int], MultiPoly]]:
    """
    (∇_Z r)(X,Y) − (∇_Y r)(X,Z) 的各分量, Γ 由符号结构常数经 Koszul 公式给出

    只保留 Y < Z 的分量(对后两个指标反对称)并丢弃恒为零的分量。

    Args:
        metric: 具体度量
        r: 目标 Ricci 张量, 元素可以是数或参数多项式
        ring: 多项式环, 默认 constraint_ring()

    Returns:
        [((x, y, z), 多项式)], 指标 1 起始
    """
    ring = ring or constraint_ring(metric.dim)
    algebra = LieAlgebra.symbolic(ring, metric.dim)
    conn = levi_civita(algebra, metric, check=False)
    target = np.empty(r.shape, dtype=object)
    for idx in product(range(metric.dim), repeat=2):
        target[idx] = r[idx] if r[idx] else ZERO
    defect = codazzi_defect(target, conn)
    out = []
    n = metric.dim
    for x in range(n):
        for y in range(n):
            for z in range(y + 1, n):
                value = defect[x, y, z]
                if value:
                    out.append(((x + 1, y + 1, z + 1), _as_poly(value, ring)))
    return out


def sw_components(pair: CanonicalPair) -> List[Tuple[Tuple[int, int, int], MultiPoly]]:
    """标准对上 Codazzi 条件的带标号分量"""
    ring = _pair_ring(pair)
    return codazzi_equations(pair.metric, pair.r, ring)


def generate_sw_equations(pair: CanonicalPair) -> List[MultiPoly]:
    """
    Schouten-Weyl 方程: SW = 0 等价于 ∇r 满足 Codazzi 对称性

    方程对结构常数是一次的, 系数含 ρ1, ρ2, α, β。
    """
    return [poly for _, poly in sw_components(pair)]


def generate_ricci_equations(pair: CanonicalPair) -> List[MultiPoly]:
    """Ricci(C, g) − r = 0 的 10 个分量(j ≤ k), 对 C 是二次的"""
    ring = _pair_ring(pair)
    algebra, conn = _symbolic_connection(pair, ring)
    R = riemann(algebra, conn, pair.metric)
    r_sym, _ = ricci(R, pair.metric)
    n = pair.metric.dim
    return [
        _as_poly(r_sym[j, k], ring) - _as_poly(pair.r[j, k], ring)
        for j in range(n)
        for k in range(j, n)
    ]


def _pair_ring(pair: CanonicalPair) -> PolyRing:
    for value in pair.r.flat:
        if isinstance(value, MultiPoly):
            return value.ring
    return constraint_ring(pair.metric.dim)


# ============ 约束系统 ============

@dataclass
class ConstraintSystem:
    """一个标准对在固定符号下的全部约束"""

    pair: CanonicalPair
    ring: PolyRing
    sw_eqs: List[MultiPoly]
    jacobi_eqs: List[MultiPoly]
    ricci_eqs: List[MultiPoly]
    sw_labels: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def variables(self) -> List[str]:
        return structure_constant_names(self.pair.metric.dim)

    @property
    def parameters(self) -> Tuple[str, ...]:
        return self.pair.parameters

    @property
    def assumptions(self) -> List[MultiPoly]:
        return self.pair.assumptions

    @property
    def signs(self) -> Tuple[int, ...]:
        return self.pair.signs

    def sections(self) -> Dict[str, List[MultiPoly]]:
        return {"sw": self.sw_eqs, "jacobi": self.jacobi_eqs, "ricci": self.ricci_eqs}

    def equations(self, sections: Sequence[str] = SECTIONS) -> List[MultiPoly]:
        table = self.sections()
        unknown = [s for s in sections if s not in table]
        if unknown:
            raise ValueError(f"未知的方程组部分: {unknown}")
        return [p for s in sections for p in table[s]]

    def saturation_polynomial(self, variable: str = "t") -> MultiPoly:
        """Rabinowitsch 多项式 t·Π(假设) − 1"""
        ring = self.ring
        product_ = fold(lambda x, y: x * y, self.assumptions, ring.one())
        return ring.var(variable) * product_ - ring.one()

    def residuals(self, values: Mapping[str, Any], sections: Sequence[str] = SECTIONS) -> Dict[str, List[MultiPoly]]:
        """代入后各部分的非零剩余"""
        out = {}
        for name in sections:
            remaining = []
            for poly in self.sections()[name]:
                value = poly.substitute(values)
                if value:
                    remaining.append(value)
            out[name] = remaining
        return out

    def vanishes_at(self, values: Mapping[str, Any], sections: Sequence[str] = SECTIONS) -> bool:
        return all(not rest for rest in self.residuals(values, sections).values())


def assemble_system(pair: CanonicalPair) -> ConstraintSystem:
    """
    组装 SW 方程、Jacobi 方程与 Ricci 匹配方程

    Args:
        pair: 带确定符号的标准 (g, r) 对

    Returns:
        ConstraintSystem
    """
    start_time = time.time()
    ring = _pair_ring(pair)
    labelled = sw_components(pair)
    system = ConstraintSystem(
        pair=pair,
        ring=ring,
        sw_eqs=[p for _, p in labelled],
        jacobi_eqs=[p.in_ring(ring) for p in jacobi_polynomials(ring, pair.metric.dim) if p],
        ricci_eqs=generate_ricci_equations(pair),
        sw_labels=[label for label, _ in labelled],
    )
    logger.debug(
        f"方程组 {pair.describe()}: SW {len(system.sw_eqs)} 个, Jacobi {len(system.jacobi_eqs)} 个, "
        f"Ricci {len(system.ricci_eqs)} 个, 耗时: {time.time() - start_time:.2f}秒"
    )
    return system


def assemble_sign_cases(
    segre: Union[str, SegreType],
    variant: MetricVariant = MetricVariant.SIGN_FLIPPED,
) -> List[ConstraintSystem]:
    """对所有 ε 符号组合组装方程组"""
    return [assemble_system(canonical_pair(segre, signs, variant)) for signs in sign_cases(segre)]


# ============ 线性约化 ============

def reduce_sw_linear(system: ConstraintSystem) -> LinearReduction:
    """在假设(ρ1 ≠ ρ2 等)下对 SW 方程做线性约化"""
    return reduce_linear(system.sw_eqs, system.variables, system.assumptions)


def ricci_parallel_on_solution(system: ConstraintSystem, reduction: Optional[LinearReduction] = None) -> bool:
    """
    在 SW 方程的线性解空间上检查 ∇r ≡ 0

    ∇r 的每个分量都对结构常数是一次的; 用约化的主元行消去后余式为零
    即说明它在解空间上恒为零。
    """
    reduction = reduction or reduce_sw_linear(system)
    _, conn = _symbolic_connection(system.pair, system.ring)
    nabla = nabla_ricci(system.pair.r, conn)
    for idx in product(range(system.pair.metric.dim), repeat=3):
        value = nabla[idx]
        if not value:
            continue
        rest = reduction.residual(_as_poly(value, system.ring))
        if rest:
            logger.debug(f"∇r 分量 {tuple(i + 1 for i in idx)} 在解空间上不为零: {rest}")
            return False
    return True


def displayed_equations_1111(signs: Sequence[int] = (1, 1, 1, 1), ring: Optional[PolyRing] = None) -> List[MultiPoly]:
    """
    {(11)(11)} 情形下 SW 方程的 20 个展示形式

    每个方程都带有公因子 (ρ1 − ρ2); 其中若干是成对的和与差。
    """
    ring = ring or constraint_ring()
    e1, e2, e3, e4 = signs
    C = lambda i, j, k: ring.var(structure_constant_name(i, j, k))  # noqa: E731
    factor = ring.var("rho1") - ring.var("rho2")
    forms = [
        C(1, 2, 3) * e3 - C(1, 3, 2) * e2 - C(2, 3, 1) * e1,
        C(1, 2, 3) * e3,
        C(1, 2, 3) * e3 + C(1, 3, 2) * e2 + C(2, 3, 1) * e1,
        C(1, 2, 4) * e4,
        C(1, 2, 4) * e4 - C(1, 4, 2) * e2 - C(2, 4, 1) * e1,
        C(1, 3, 1) * e1,
        C(1, 2, 4) * e4 + C(1, 4, 2) * e2 + C(2, 4, 1) * e1,
        C(1, 3, 3) * e3,
        C(1, 3, 4) * e4 + C(1, 4, 3) * e3 - C(3, 4, 1) * e1,
        C(1, 4, 1) * e1,
        C(1, 3, 4) * e4 + C(1, 4, 3) * e3 + C(3, 4, 1) * e1,
        C(1, 4, 4) * e4,
        C(2, 3, 4) * e4 + C(2, 4, 3) * e3 - C(3, 4, 2) * e2,
        C(2, 3, 2) * e2,
        C(2, 3, 4) * e4 + C(2, 4, 3) * e3 + C(3, 4, 2) * e2,
        C(2, 3, 3) * e3,
        C(2, 4, 2) * e2,
        C(2, 4, 4) * e4,
        C(3, 4, 1) * e1,
        C(3, 4, 2) * e2,
    ]
    return [form * factor for form in forms]


# ============ 解族 ============

def _check_sign(name: str, value: int):
    if value not in (1, -1):
        raise FamilyParameterError(f"{name} 必须为 ±1, 实际为 {value}")


def _check_family(a: Any, delta: int, *signs: Tuple[str, int]):
    if not a:
        raise FamilyParameterError("解族要求 a ≠ 0(a = 0 时退化为交换李代数)")
    _check_sign("delta", delta)
    for name, value in signs:
        _check_sign(name, value)


def family_constants(a: Any, delta: int = 1, eps2: int = 1, eps3: int = 1) -> Dict[Tuple[int, int, int], Any]:
    """
    C23^3 = −C24^4 = −aδ√3, C23^4 = C24^3 = a, C34^2 = 2aε2ε3, 其余为零

    a 可以是数, 也可以是多项式(符号参数)。
    """
    _check_family(a, delta, ("eps2", eps2), ("eps3", eps3))
    root3 = FieldScalar.sqrt_of(3)
    return {
        (2, 3, 3): -(a * delta) * root3,
        (2, 4, 4): (a * delta) * root3,
        (2, 3, 4): a,
        (2, 4, 3): a,
        (3, 4, 2): a * (2 * eps2 * eps3),
    }


def family_algebra(a: Number, delta: int = 1, eps2: int = 1, eps3: int = 1) -> LieAlgebra:
    a = FieldScalar.of(a, 3)
    return LieAlgebra(4, family_constants(a, delta, eps2, eps3), d=3)


def family_metric(
    eps1: int = 1,
    eps2: int = 1,
    eps3: int = 1,
    variant: MetricVariant = MetricVariant.SIGN_FLIPPED,
) -> Metric:
    """{1111~} 标准度量: diag(ε1, ε2, ε3, −ε3), 或按原样写作 diag(ε1, ε2, ε3, ε3)"""
    for name, value in (("eps1", eps1), ("eps2", eps2), ("eps3", eps3)):
        _check_sign(name, value)
    eps4 = -eps3 if MetricVariant(variant) == MetricVariant.SIGN_FLIPPED else eps3
    return Metric.diag([eps1, eps2, eps3, eps4])


def family_ricci_values(a: Any, delta: int = 1, eps2: int = 1) -> Dict[str, Any]:
    """ρ1 = 0, ρ2 = −8a²ε2, α = 4a²ε2, β = 4a²δε2√3"""
    a_sq = a * a
    return {
        "rho1": ZERO,
        "rho2": a_sq * (-8 * eps2),
        "alpha": a_sq * (4 * eps2),
        "beta": a_sq * (4 * delta * eps2) * FieldScalar.sqrt_of(3),
    }


def family_point(a: Any, delta: int = 1, eps2: int = 1, eps3: int = 1) -> Dict[str, Any]:
    """解族对应的全部变量取值: 24 个结构常数加 ρ1, ρ2, α, β"""
    constants = family_constants(a, delta, eps2, eps3)
    point: Dict[str, Any] = {name: ZERO for name in structure_constant_names(4)}
    for (i, j, k), value in constants.items():
        point[structure_constant_name(i, j, k)] = value
    point.update(family_ricci_values(a, delta, eps2))
    return point


@dataclass
class FamilyVerification:
    """解族在一组参数下的完整验证结果"""

    a: FieldScalar
    delta: int
    signs: Tuple[int, int, int]
    variant: MetricVariant
    algebra: LieAlgebra
    metric: Metric
    report: CurvatureReport
    jacobi_ok: bool
    predicates: Predicates
    segre: Optional[SegreType]
    eigendata: EigenData
    expected: Dict[str, FieldScalar]
    operator_entries_match: bool
    elapsed: float = 0.0

    @property
    def sw_zero(self) -> bool:
        return self.report.sw_zero

    @property
    def identity_holds(self) -> bool:
        return self.report.identity_holds

    @property
    def codazzi_holds(self) -> bool:
        return self.report.codazzi_holds

    @property
    def complex_pair_present(self) -> bool:
        return bool(self.eigendata.complex_pairs)

    @property
    def eigen_match(self) -> bool:
        """实特征值 {ρ1, ρ2} 与复特征值对 α ± i|β| 是否与预期一致"""
        if len(self.eigendata.complex_pairs) != 1:
            return False
        pair = self.eigendata.complex_pairs[0]
        beta = self.expected["beta"]
        expected_reals = sorted([self.expected["rho1"], self.expected["rho2"]])
        return (
            self.eigendata.real_values() == expected_reals
            and pair.alpha == self.expected["alpha"]
            and pair.beta == (beta if beta.sign() > 0 else -beta)
        )

    @property
    def reproduces_family(self) -> bool:
        """SW = 0, 非 Einstein、非共形平坦、非 Ricci 平行, 且特征数据与预期一致"""
        p = self.predicates
        return (
            self.jacobi_ok
            and p.sw_zero
            and not p.einstein
            and not p.conformally_flat
            and not p.ricci_parallel
            and self.operator_entries_match
            and self.eigen_match
        )


def verify_family(
    a: Number,
    delta: int = 1,
    eps2: int = 1,
    eps3: int = 1,
    variant: MetricVariant = MetricVariant.SIGN_FLIPPED,
    eps1: int = 1,
    tolerance: float = 1e-9,
) -> FamilyVerification:
    """
    在具体参数下构造解族并跑完整个曲率流程

    Args:
        a: 非零有理数(或 Q(√3) 中的数)
        delta, eps2, eps3, eps1: ±1
        variant: (e3, e4) 度量块的写法
        tolerance: Segre 数值判定的精度

    Raises:
        FamilyParameterError: a = 0 或符号不是 ±1
    """
    start_time = time.time()
    a = FieldScalar.of(a, 3)
    variant = MetricVariant(variant)
    _check_family(a, delta, ("eps1", eps1), ("eps2", eps2), ("eps3", eps3))
    logger.info(f"验证解族: a={a}, δ={delta:+d}, ε=({eps1:+d},{eps2:+d},{eps3:+d}), 度量 {variant.value}")

    algebra = family_algebra(a, delta, eps2, eps3)
    jacobi = algebra.jacobi_check()
    metric = family_metric(eps1, eps2, eps3, variant)
    report = compute_curvature(algebra, metric)
    rho = ricci_operator(report.ricci, metric)

    try:
        segre = segre_type(rho, tolerance)
    except SegreIndeterminateError as e:
        logger.warning(f"解族的 Segre 类型无法判定: {e}")
        segre = None

    expected = {k: FieldScalar.of(v, 3) for k, v in family_ricci_values(a, delta, eps2).items()}
    m = rho.matrix
    e = expected
    operator_entries_match = (
        m[0, 0] == e["rho1"] and m[1, 1] == e["rho2"]
        and m[2, 2] == e["alpha"] and m[3, 3] == e["alpha"]
        and m[2, 3] == e["beta"] and m[3, 2] == -e["beta"]
        and all(not m[i, j] for i, j in product(range(4), repeat=2) if i != j and {i, j} != {2, 3})
    )

    result = FamilyVerification(
        a=a,
        delta=delta,
        signs=(eps1, eps2, eps3),
        variant=variant,
        algebra=algebra,
        metric=metric,
        report=report,
        jacobi_ok=jacobi.ok,
        predicates=predicates(report),
        segre=segre,
        eigendata=ricci_eigendata(rho, algebra.d),
        expected=expected,
        operator_entries_match=operator_entries_match,
        elapsed=time.time() - start_time,
    )
    logger.success(
        f"解族验证完成: SW=0 {result.sw_zero}, Segre {segre.render() if segre else '?'}, "
        f"耗时: {result.elapsed:.2f}秒"
    )
    return result


# ============ Gröbner 求解 ============

@dataclass
class CandidateCheck:
    """候选解的检查结果"""

    point: Dict[str, Any]
    in_variety: bool
    discarded: Optional[str] = None


@dataclass
class SolutionReport:
    """solve_small 的结果"""

    strategy: str
    sections: Tuple[str, ...]
    linear: Optional[LinearReduction] = None
    basis: Optional[List[MultiPoly]] = None
    saturated: bool = False
    budget_exhausted: bool = False
    inconsistent: bool = False
    candidates: List[CandidateCheck] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def accepted(self) -> List[CandidateCheck]:
        return [c for c in self.candidates if c.in_variety and c.discarded is None]


def groebner_with_budget(polys: Sequence[MultiPoly], order: str = "grevlex", budget: int = 100000, max_budget: int = 1000000) -> List[MultiPoly]:
    """
    预算逐级放大的 Buchberger

    Raises:
        RetryError: 预算放大到上限后仍然耗尽
    """

    @retry_with_budget_growth(initial_budget=budget, max_budget=max_budget)
    def run(*, budget: int) -> List[MultiPoly]:
        return buchberger(polys, order=order, budget=budget)

    return run()


def _saturation_value(system: ConstraintSystem, point: Mapping[str, Any]) -> Optional[FieldScalar]:
    product_ = FieldScalar(1)
    for a in system.assumptions:
        value = a.substitute(point)
        if not value.is_constant():
            return None
        product_ = product_ * value.constant_value()
    return product_.inverse() if product_ else None


def _discard_reason(system: ConstraintSystem, point: Mapping[str, Any]) -> Optional[str]:
    """共形平坦或 Ricci 平行的解被舍弃"""
    constants = {}
    for i, j, k in ((i, j, k) for i in range(1, 5) for j in range(i + 1, 5) for k in range(1, 5)):
        value = point.get(structure_constant_name(i, j, k), ZERO)
        if isinstance(value, MultiPoly):
            value = value.constant_value()
        if value:
            constants[(i, j, k)] = value
    d = next((v.d for v in constants.values() if isinstance(v, FieldScalar) and v.q), 1)
    report = compute_curvature(LieAlgebra(4, constants, d), system.pair.metric, check=False)
    p = predicates(report)
    if p.conformally_flat:
        return "conformally_flat"
    if p.ricci_parallel:
        return "ricci_parallel"
    return None


def solve_polynomials(
    polys: Sequence[MultiPoly],
    order: str = "grevlex",
    budget: int = 100000,
    max_budget: int = 1000000,
) -> Tuple[Optional[List[MultiPoly]], bool]:
    """
    计算 Gröbner 基; 预算最终耗尽时返回 (None, True) 而不是抛出

    Returns:
        (基, 是否耗尽预算)
    """
    polys = [p for p in polys if p]
    if not polys:
        return [], False
    try:
        return groebner_with_budget(polys, order, budget, max_budget), False
    except RetryError as e:
        logger.warning(f"Gröbner 计算在预算 {max_budget} 内未完成: {e.__cause__}")
        return None, True


def solve_small(
    system: ConstraintSystem,
    strategy: str = "linear-then-gb",
    sections: Sequence[str] = SECTIONS,
    candidates: Sequence[Mapping[str, Any]] = (),
    order: str = "grevlex",
    budget: int = 100000,
    max_budget: int = 1000000,
    saturate: bool = True,
) -> SolutionReport:
    """
    在假设 ρ1 ≠ ρ2、β ≠ 0 下求解小规模方程组

    不等式假设用 Rabinowitsch 变量 t 编码(t·Π假设 − 1)。候选解先经代入
    检查是否在簇上, 再舍弃共形平坦与 Ricci 平行的解。

    Args:
        system: 约束系统
        strategy: linear-then-gb(先线性约化 SW 方程, 代入被迫为零的变量) 或 gb-only
        sections: 参与求解的部分(sw / jacobi / ricci)
        candidates: 待检查的候选解(变量名 → 值)
        order: 单项式序
        budget: 初始约化步数预算
        max_budget: 预算上限
        saturate: 是否加入饱和多项式

    Returns:
        SolutionReport; 预算耗尽时 budget_exhausted 为 True, 不抛出
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"未知的求解策略: {strategy}, 可选 {STRATEGIES}")
    start_time = time.time()
    sections = tuple(sections)
    report = SolutionReport(strategy=strategy, sections=sections, saturated=saturate and bool(system.assumptions))
    polys = system.equations(sections)

    if strategy == "linear-then-gb" and "sw" in sections:
        report.linear = reduce_sw_linear(system)
        zeros = {name: ZERO for name in report.linear.forced_zero}
        polys = [p.substitute(zeros) for p in polys]
        polys = [*(system.ring.var(v) for v in report.linear.forced_zero), *polys]

    if report.saturated:
        polys = [*polys, system.saturation_polynomial()]

    logger.info(f"求解 {system.pair.describe()}: 策略 {strategy}, {len(polys)} 个多项式")
    report.basis, report.budget_exhausted = solve_polynomials(polys, order, budget, max_budget)
    if report.basis is not None:
        report.inconsistent = len(report.basis) == 1 and report.basis[0].is_constant() and bool(report.basis[0])

    for point in candidates:
        point = dict(point)
        if report.saturated:
            t = _saturation_value(system, point)
            if t is None:
                report.candidates.append(CandidateCheck(point, in_variety=False, discarded="assumption_violated"))
                continue
            point["t"] = t
        in_variety = system.vanishes_at(point, sections)
        if in_variety and report.basis is not None:
            in_variety = all(not g.substitute(point) for g in report.basis)
        reason = _discard_reason(system, point) if in_variety else None
        report.candidates.append(CandidateCheck(point, in_variety=in_variety, discarded=reason))

    report.elapsed = time.time() - start_time
    logger.success(
        f"求解完成: 基大小 {len(report.basis) if report.basis is not None else '-'}, "
        f"预算耗尽 {report.budget_exhausted}, 耗时: {report.elapsed:.2f}秒"
    )
    return report


# ============ 输出 ============

def _metric_text(metric: Metric) -> str:
    g = metric.g
    if all(not g[i, j] for i in range(g.nrows) for j in range(g.ncols) if i != j):
        return "diag(" + ", ".join(str(g[i, i]) for i in range(g.nrows)) + ")"
    return "[" + "; ".join(", ".join(str(v) for v in row) for row in g) + "]"


def dump_system(system: ConstraintSystem) -> str:
    """
    确定性的文本输出: 头部记录标准对、符号、度量与假设, 之后每行一个多项式
    """
    pair = system.pair
    lines = [
        f"# segre: {pair.segre.render()}",
        "# signs: " + ", ".join(f"eps{i + 1}={s:+d}" for i, s in enumerate(pair.signs)),
        f"# metric: {_metric_text(pair.metric)}",
    ]
    if pair.variant is not None:
        lines.append(f"# metric_variant: {pair.variant.value}")
    r_rows = ["[" + ", ".join(str(v) for v in row) + "]" for row in pair.r]
    lines.append("# ricci: [" + ", ".join(r_rows) + "]")
    lines.append("# assumptions: " + (", ".join(f"{a} != 0" for a in pair.assumptions) or "none"))
    for name, polys in system.sections().items():
        lines.append(f"[{name}] {len(polys)}")
        lines.extend(str(p) for p in polys)
    return "\n".join(lines) + "\n"


__all__ = [
    "ConstraintSystem",
    "FamilyParameterError",
    "FamilyVerification",
    "SolutionReport",
    "assemble_system",
    "assemble_sign_cases",
    "codazzi_equations",
    "displayed_equations_1111",
    "dump_system",
    "family_algebra",
    "family_metric",
    "family_point",
    "generate_ricci_equations",
    "generate_sw_equations",
    "reduce_sw_linear",
    "ricci_parallel_on_solution",
    "solve_polynomials",
    "solve_small",
    "verify_family",
]
