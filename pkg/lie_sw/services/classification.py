"""
分类服务: Ricci 算子、Segre 类型、Segre 类型目录、标准 (g, r) 对与判别谓词

Segre 机器格式:
    `{` 块* `}`, 块 = 记号 | `(` 记号+ `)`
    实 Jordan 块写作其大小 k; 大小为 k 的共轭复特征值对写作 `kk~`
    例如 {1111~} 表示两个 1 阶实块加一对 1 阶复块
"""

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from ..core.field import FieldScalar, Number, ZERO, ONE
from ..core.matrix import DimensionMismatchError, Matrix
from ..core.poly import (
    MultiPoly,
    PolyRing,
    count_real_roots,
    square_free_decomposition,
    upoly_derivative,
    upoly_divmod,
    upoly_eval,
    upoly_gcd,
    upoly_monic,
    upoly_mul,
)
from .curvature import CurvatureReport, Metric, as_matrix, is_zero_tensor
from .lie_algebra import structure_constant_names


class SegreIndeterminateError(ArithmeticError):
    """数值精度不足以区分两个特征值"""
    pass


class UnsupportedSegreTypeError(ValueError):
    """没有为该 Segre 类型实现标准形"""

    def __init__(self, segre: str, supported: Sequence[str]):
        self.segre = segre
        self.supported = list(supported)
        super().__init__(f"不支持的 Segre 类型 {segre}, 已实现: {', '.join(self.supported)}")


class NotSelfAdjointError(ValueError):
    """g·ρ 不对称"""
    pass


# ============ Ricci 算子 ============

@dataclass
class RicciOperator:
    """ρ = g⁻¹·r"""

    matrix: Matrix
    metric: Metric

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def is_self_adjoint(self) -> bool:
        return (self.metric.g @ self.matrix).is_symmetric()


def ricci_operator(r: Union[Matrix, np.ndarray], metric: Metric) -> RicciOperator:
    """
    升指标得到 Ricci 算子

    Raises:
        NotSelfAdjointError: 结果不是 g-自伴的(r 不对称)
    """
    if isinstance(r, np.ndarray):
        r = as_matrix(r)
    rho = RicciOperator(matrix=metric.g_inv @ r, metric=metric)
    if not rho.is_self_adjoint():
        raise NotSelfAdjointError("Ricci 算子不是 g-自伴的")
    return rho


# ============ Segre 类型 ============

@dataclass(frozen=True)
class SegreBlock:
    size: int
    complex: bool
    eigen_group: int


@dataclass(frozen=True)
class SegreType:
    """
    Segre 类型: Jordan 块按特征值分组

    blocks 已按规范顺序排列: 实特征值组在前, 复特征值对组在后;
    组按 (最大块, 块数, 块大小) 升序; 组内块升序。
    """

    blocks: Tuple[SegreBlock, ...]

    @classmethod
    def from_groups(cls, real: Sequence[Sequence[int]], complex_: Sequence[Sequence[int]] = ()) -> "SegreType":
        """由各特征值的块大小列表构造并规范排序"""
        def key(group: Sequence[int]):
            sizes = tuple(sorted(group))
            return (max(sizes), len(sizes), sizes)

        blocks = []
        gid = 0
        for is_complex, groups in ((False, real), (True, complex_)):
            for group in sorted((tuple(sorted(g)) for g in groups), key=key):
                for size in group:
                    blocks.append(SegreBlock(size, is_complex, gid))
                gid += 1
        return cls(tuple(blocks))

    def groups(self) -> List[Tuple[bool, Tuple[int, ...]]]:
        out: Dict[int, List[SegreBlock]] = {}
        for b in self.blocks:
            out.setdefault(b.eigen_group, []).append(b)
        return [(bs[0].complex, tuple(b.size for b in bs)) for _, bs in sorted(out.items())]

    @property
    def total_size(self) -> int:
        return sum(b.size * (2 if b.complex else 1) for b in self.blocks)

    @property
    def degenerate(self) -> bool:
        return any(len(sizes) > 1 for _, sizes in self.groups())

    @property
    def complex_pairs(self) -> int:
        return sum(1 for b in self.blocks if b.complex)

    # ============ 格式 ============

    def render(self) -> str:
        """机器格式, 例如 {1(12)} 或 {1111~}"""
        parts = []
        for is_complex, sizes in self.groups():
            tokens = "".join(f"{s}{s}~" if is_complex else str(s) for s in sizes)
            parts.append(f"({tokens})" if len(sizes) > 1 else tokens)
        return "{" + "".join(parts) + "}"

    def human(self) -> str:
        """人类可读格式, 复特征值对写作 k k̄"""
        def join(tokens: Sequence[str]) -> str:
            out = ""
            for tok in tokens:
                if out.endswith("\u0304"):
                    out += " "
                out += tok
            return out

        parts = []
        for is_complex, sizes in self.groups():
            tokens = [f"{s} {s}\u0304" if is_complex else str(s) for s in sizes]
            parts.append(f"({join(tokens)})" if len(sizes) > 1 else join(tokens))
        return "{" + join(parts) + "}"

    @classmethod
    def parse(cls, text: str) -> "SegreType":
        """
        解析机器格式

        Raises:
            ValueError: 语法错误
        """
        s = text.strip()
        if not (s.startswith("{") and s.endswith("}")):
            raise ValueError(f"Segre 类型必须用花括号包围: {text!r}")
        body = s[1:-1].replace(" ", "")
        real: List[List[int]] = []
        complex_: List[List[int]] = []
        pos = 0

        def read_token(p: int) -> Tuple[int, bool, int]:
            if p >= len(body) or not body[p].isdigit():
                raise ValueError(f"Segre 类型语法错误: {text!r} 第 {p + 1} 个字符")
            size = int(body[p])
            if body[p + 1:p + 2] == body[p] and body[p + 2:p + 3] == "~":
                return size, True, p + 3
            return size, False, p + 1

        while pos < len(body):
            if body[pos] == "(":
                pos += 1
                group: List[Tuple[int, bool]] = []
                while pos < len(body) and body[pos] != ")":
                    size, is_complex, pos = read_token(pos)
                    group.append((size, is_complex))
                if pos >= len(body) or len(group) < 2:
                    raise ValueError(f"Segre 类型括号不匹配或组内块数不足: {text!r}")
                pos += 1
                kinds = {c for _, c in group}
                if len(kinds) > 1:
                    raise ValueError(f"同一特征值组不能混合实块与复块: {text!r}")
                (complex_ if kinds.pop() else real).append([sz for sz, _ in group])
            else:
                size, is_complex, pos = read_token(pos)
                (complex_ if is_complex else real).append([size])
        if not real and not complex_:
            raise ValueError(f"空的 Segre 类型: {text!r}")
        return cls.from_groups(real, complex_)

    def __str__(self) -> str:
        return self.render()


# ============ Jordan 结构 ============

def _blocks_from_nullities(nullities: Sequence[int]) -> List[int]:
    """由 dim ker p(ρ)^j (已除以 deg p) 的序列求 Jordan 块大小"""
    seq = [0, *nullities]
    at_least = [seq[j] - seq[j - 1] for j in range(1, len(seq))]
    sizes = []
    for j, count in enumerate(at_least, start=1):
        nxt = at_least[j] if j < len(at_least) else 0
        sizes.extend([j] * (count - nxt))
    return sorted(sizes)


def _jordan_sizes(rho: Matrix, factor: Sequence[FieldScalar], multiplicity: int) -> List[int]:
    deg = len(factor) - 1
    base = rho.polynomial_at(factor)
    nullities = []
    power = Matrix.identity(rho.nrows)
    for _ in range(multiplicity):
        power = power @ base
        nullities.append(power.nullity() // deg)
    return _blocks_from_nullities(nullities)


def _int_eval(g: Sequence[int], y):
    acc = 0
    for c in reversed(g):
        acc = acc * y + c
    return acc


def _refine_root(g: Sequence[int], deriv: Sequence[int], y0: float, bits: int = 400) -> Optional[Fraction]:
    """在有理数上做 Newton 迭代, 把单根的浮点近似提升到约 bits 位精度"""
    if not math.isfinite(y0):
        return None
    y = Fraction(y0)
    scale = 1 << bits
    for _ in range(8):
        slope = _int_eval(deriv, y)
        if slope == 0:
            break
        step = _int_eval(g, y) / slope
        y = Fraction(round((y - step) * scale), scale)
        if abs(step) * scale < 1:
            break
    return y


def _find_field_roots(poly: List[FieldScalar], d: int) -> List[FieldScalar]:
    """
    找出多项式在 Q(√d) 中的根

    对范数多项式 N = f·f̄ (有理系数) 取无平方部分, 代换 y = D·x 得到首一
    整系数多项式: 其有理根必为整数, Q(√d) 中的共轭根对满足整系数的
    y² − s·y + t。数值根经精确 Newton 提升精度后取整, 每个候选都在 f 上精确验证。
    """
    f = upoly_monic(poly)
    if len(f) <= 2:
        return [-f[0]] if len(f) == 2 else []
    norm = f if all(c.is_rational for c in f) else upoly_mul(f, [c.conjugate() for c in f])
    norm = upoly_monic(upoly_divmod(norm, upoly_gcd(norm, upoly_derivative(norm)))[0])
    r = [c.p for c in norm]
    n = len(r) - 1
    D = 1
    for c in r:
        D = math.lcm(D, c.denominator)
    g = [int(c * D ** (n - k)) for k, c in enumerate(r)]
    deriv = [k * g[k] for k in range(1, len(g))]

    approx = np.roots([float(c) for c in reversed(r)]) if n > 1 else [-float(r[0])]
    reals = []
    for z in approx:
        if abs(z.imag) <= 1e-6 * max(1.0, abs(z)):
            y = _refine_root(g, deriv, float(z.real) * D)
            if y is not None:
                reals.append(y)

    candidates = []
    for y in reals:
        for k in (round(y) - 1, round(y), round(y) + 1):
            if _int_eval(g, k) == 0:
                candidates.append(FieldScalar(Fraction(k, D), 0, d))
    if d > 1:
        for y1, y2 in combinations(reals, 2):
            s, t = round(y1 + y2), round(y1 * y2)
            disc = s * s - 4 * t
            if disc <= 0 or disc % d:
                continue
            k = math.isqrt(disc // d)
            if k == 0 or k * k * d != disc:
                continue
            for sign in (1, -1):
                candidates.append(FieldScalar(Fraction(s, 2 * D), Fraction(sign * k, 2 * D), d))

    found = []
    rest = f
    for cand in candidates:
        if len(rest) <= 1:
            break
        if cand in found:
            continue
        if not upoly_eval(rest, cand):
            found.append(cand)
            rest = upoly_divmod(rest, [-cand, ONE])[0]
    return found


@dataclass
class _Eigen:
    """一个特征值(或共轭对)及其 Jordan 块"""

    complex: bool
    blocks: List[int]
    approx: complex
    exact: Optional[FieldScalar] = None
    alpha: Optional[FieldScalar] = None
    beta: Optional[FieldScalar] = None
    multiplicity: int = 1


def _field_of(m: Matrix) -> int:
    for row in m:
        for v in row:
            if v.q:
                return v.d
    return 1


def _analyse(rho: Matrix, d: Optional[int] = None) -> List[_Eigen]:
    """特征多项式的精确分解与各特征值的 Jordan 结构"""
    d = d if d and d > 1 else _field_of(rho)
    coeffs = rho.char_poly_coeffs()
    eigen: List[_Eigen] = []

    def add_linear(root: FieldScalar, mult: int):
        factor = [-root, ONE]
        eigen.append(_Eigen(False, _jordan_sizes(rho, factor, mult), complex(float(root)), exact=root, multiplicity=mult))

    for factor, mult in square_free_decomposition(coeffs):
        for root in _find_field_roots(factor, d):
            add_linear(root, mult)
            factor = upoly_divmod(factor, [-root, ONE])[0]
        deg = len(factor) - 1
        if deg <= 0:
            continue
        if deg == 1:
            add_linear(-factor[0] / factor[1], mult)
            continue
        if deg == 2:
            c, b = factor[0], factor[1]
            disc = b * b - 4 * c
            if disc.is_rational:
                disc = FieldScalar(disc.p, 0, d)
            alpha = -b / 2
            if disc.sign() < 0:
                root_disc = (-disc).sqrt_in_field()
                beta = root_disc / 2 if root_disc is not None else None
                beta_f = float(np.sqrt(-float(disc)) / 2)
                eigen.append(_Eigen(
                    True, _jordan_sizes(rho, factor, mult), complex(float(alpha), beta_f),
                    alpha=alpha, beta=beta, multiplicity=mult,
                ))
            elif disc.sqrt_in_field() is not None:
                root_disc = disc.sqrt_in_field()
                add_linear(alpha + root_disc / 2, mult)
                add_linear(alpha - root_disc / 2, mult)
            else:
                # √Δ 不在域中: 两个共轭的无理实根, Jordan 结构相同
                blocks = _jordan_sizes(rho, factor, mult)
                root_f = float(np.sqrt(float(disc)) / 2)
                for sign in (1, -1):
                    eigen.append(_Eigen(False, list(blocks), complex(float(alpha) + sign * root_f), multiplicity=mult))
            continue
        # 次数 ≥ 3 的剩余因式: Sturm 计数实根, 数值近似
        blocks = _jordan_sizes(rho, factor, mult)
        n_real = count_real_roots(factor)
        approx = np.roots([float(c) for c in reversed(factor)])
        approx = sorted(approx, key=lambda z: (abs(z.imag) > 1e-12, z.real, z.imag))
        reals = sorted(approx, key=lambda z: abs(z.imag))[:n_real]
        for z in reals:
            eigen.append(_Eigen(False, list(blocks), complex(z.real, 0.0), multiplicity=mult))
        upper = [z for z in approx if z not in reals and z.imag > 0]
        for z in upper[: (deg - n_real) // 2]:
            eigen.append(_Eigen(True, list(blocks), complex(z), multiplicity=mult))
    return eigen


def _check_separation(eigen: List[_Eigen], tolerance: float):
    """只对至少一方没有精确值的特征值检查数值间距; 两个精确值已知不同"""
    points = []
    for e in eigen:
        if e.complex:
            exact = e.alpha is not None and e.beta is not None
            points.append((e.approx, exact))
            points.append((e.approx.conjugate(), exact))
        else:
            points.append((e.approx, e.exact is not None))
    for (z1, exact1), (z2, exact2) in combinations(points, 2):
        if exact1 and exact2:
            continue
        if abs(z1 - z2) < 10 * tolerance:
            raise SegreIndeterminateError(
                f"特征值 {z1:.6g} 与 {z2:.6g} 相距小于 10×{tolerance:g}, 当前精度下无法判定"
            )


def segre_type(rho: Union[RicciOperator, Matrix], tolerance: float = 1e-9) -> SegreType:
    """
    计算自伴算子的 Segre 类型

    实/复的判定与 Jordan 块大小全部精确; tolerance 只用于检查
    数值近似的特征值是否过于接近(此时报错而不是猜测)。

    Raises:
        SegreIndeterminateError: 两个不同特征值(至少一个没有精确值)的数值近似相距小于 10×tolerance
    """
    matrix = rho.matrix if isinstance(rho, RicciOperator) else rho
    if not matrix.is_square:
        raise DimensionMismatchError("Segre 类型只对方阵定义")
    eigen = _analyse(matrix)
    _check_separation(eigen, tolerance)
    real = [e.blocks for e in eigen if not e.complex]
    complex_ = [e.blocks for e in eigen if e.complex]
    result = SegreType.from_groups(real, complex_)
    assert result.total_size == matrix.nrows, f"Jordan 块总大小 {result.total_size} ≠ {matrix.nrows}"
    logger.debug(f"Segre 类型: {result.render()}")
    return result


# ============ 特征数据 ============

@dataclass
class RealEigenvalue:
    exact: Optional[FieldScalar]
    approx: float
    multiplicity: int


@dataclass
class ComplexPair:
    """α ± iβ, β > 0"""

    alpha: Optional[FieldScalar]
    beta: Optional[FieldScalar]
    approx_alpha: float
    approx_beta: float
    multiplicity: int


@dataclass
class EigenData:
    real: List[RealEigenvalue] = field(default_factory=list)
    complex_pairs: List[ComplexPair] = field(default_factory=list)

    def real_values(self) -> List[FieldScalar]:
        """按重数展开的精确实特征值(升序); 无精确值的忽略"""
        out = []
        for e in self.real:
            if e.exact is not None:
                out.extend([e.exact] * e.multiplicity)
        return sorted(out)


def ricci_eigendata(rho: Union[RicciOperator, Matrix], field_sqrt: Optional[int] = None) -> EigenData:
    """
    Ricci 算子的特征值: Q(√d) 内的给出精确值, 复特征值对给出 (α, β)

    field_sqrt 缺省时从矩阵元素推断; 有理矩阵的特征值要在 Q(√d) 中求精确值时需显式给出。
    """
    matrix = rho.matrix if isinstance(rho, RicciOperator) else rho
    data = EigenData()
    for e in _analyse(matrix, field_sqrt):
        if e.complex:
            data.complex_pairs.append(ComplexPair(
                alpha=e.alpha, beta=e.beta,
                approx_alpha=e.approx.real, approx_beta=abs(e.approx.imag),
                multiplicity=e.multiplicity,
            ))
        else:
            data.real.append(RealEigenvalue(exact=e.exact, approx=e.approx.real, multiplicity=e.multiplicity))
    data.real.sort(key=lambda e: e.approx)
    data.complex_pairs.sort(key=lambda p: (p.approx_alpha, p.approx_beta))
    return data


# ============ Segre 类型目录 ============

@dataclass(frozen=True)
class CatalogEntry:
    segre: SegreType
    neutral_only: bool

    @property
    def degenerate(self) -> bool:
        return self.segre.degenerate


SEGRE_CATALOG = (
    "{1111}", "{112}", "{22}", "{13}", "{4}",
    "{11(11)}", "{(11)(11)}", "{1(111)}", "{(1111)}", "{1(12)}",
    "{(11)2}", "{(112)}", "{(22)}", "{(13)}",
    "{1111~}", "{211~}", "{22~}", "{11~11~}", "{(11)11~}", "{(11~11~)}",
)

NEUTRAL_ONLY = frozenset({"{22}", "{4}", "{211~}", "{22~}", "{11~11~}", "{(22)}", "{(11~11~)}"})

SW_NONTRIVIAL_TYPES = ("{1(12)}", "{(11)2}", "{(112)}", "{(22)}", "{1111~}")


def segre_catalog() -> List[CatalogEntry]:
    """四维度量李群上 Ricci 算子可能的全部 Segre 类型(20 项)"""
    return [CatalogEntry(SegreType.parse(s), s in NEUTRAL_ONLY) for s in SEGRE_CATALOG]


def is_neutral_only(segre: SegreType) -> bool:
    return segre.render() in NEUTRAL_ONLY


def check_signature_admissible(segre: SegreType, metric: Metric) -> bool:
    """只在中性号差下可能出现的类型出现在非中性度量上时记录警告"""
    if is_neutral_only(segre) and not metric.is_neutral:
        logger.warning(f"Segre 类型 {segre.render()} 只应出现在中性号差度量上, 当前号差 {metric.signature}")
        return False
    return True


# ============ 标准 (g, r) 对 ============

PARAMETER_NAMES = ("rho1", "rho2", "alpha", "beta", "a", "t")


def constraint_ring(dim: int = 4, order: str = "grevlex") -> PolyRing:
    """结构常数在前、参数在后的多项式环"""
    return PolyRing(tuple(structure_constant_names(dim)) + PARAMETER_NAMES, order)


class MetricVariant(str, Enum):
    """{1111~} 标准形中 (e3, e4) 度量块的两种写法"""

    SIGN_FLIPPED = "sign-flipped"   # diag(ε3, −ε3), 给出复特征值对
    LITERAL = "literal"             # diag(ε3, ε3), 特征值全为实数


@dataclass
class CanonicalPair:
    """
    一个 Segre 类型在给定符号 ε 下的标准 (g, r)

    r 的元素是参数环中的多项式; assumptions 为假设非零的因子。
    """

    segre: SegreType
    signs: Tuple[int, ...]
    metric: Metric
    r: np.ndarray
    assumptions: List[MultiPoly]
    parameters: Tuple[str, ...]
    variant: Optional[MetricVariant] = None

    def instantiate(self, values: Dict[str, Number]) -> Matrix:
        """参数取值后的 r 矩阵"""
        rows = []
        for row in self.r:
            rows.append([v.substitute(values).constant_value() if v else ZERO for v in row])
        return Matrix(rows)

    def admissible(self, values: Dict[str, Number]) -> bool:
        return all(a.substitute(values).constant_value() for a in self.assumptions)

    def describe(self) -> str:
        eps = ", ".join(f"ε{i + 1}={s:+d}" for i, s in enumerate(self.signs))
        return f"{self.segre.render()} [{eps}]" + (f" ({self.variant.value})" if self.variant else "")


def _build_pair(segre: str, signs, g_blocks, r_blocks, assumptions, parameters, variant=None) -> CanonicalPair:
    g = Matrix.block_diag(*[Matrix(b) for b in g_blocks])
    n = g.nrows
    ring = r_blocks[0][0][0].ring
    r = np.full((n, n), ring.zero(), dtype=object)
    offset = 0
    for block in r_blocks:
        size = len(block)
        for i in range(size):
            for j in range(size):
                r[offset + i, offset + j] = block[i][j]
        offset += size
    return CanonicalPair(
        segre=SegreType.parse(segre),
        signs=tuple(signs),
        metric=Metric(g),
        r=r,
        assumptions=list(assumptions),
        parameters=tuple(parameters),
        variant=variant,
    )


def _sign_count(segre: str) -> int:
    return {"{(11)(11)}": 4, "{1111~}": 3, "{1(12)}": 3, "{(11)2}": 3, "{(112)}": 3, "{(22)}": 2}[segre]


SUPPORTED_PAIRS = ("{(11)(11)}", "{1(12)}", "{(11)2}", "{(112)}", "{(22)}", "{1111~}")


def canonical_pair(
    segre: Union[str, SegreType],
    signs: Optional[Sequence[int]] = None,
    variant: MetricVariant = MetricVariant.SIGN_FLIPPED,
    ring: Optional[PolyRing] = None,
) -> CanonicalPair:
    """
    构造标准 (g, r) 对

    Args:
        segre: Segre 类型(机器格式或 SegreType)
        signs: ε 取值(±1), 默认全为 +1
        variant: 仅对 {1111~} 有意义
        ring: 参数所在的环, 默认 constraint_ring()

    Raises:
        UnsupportedSegreTypeError: 未实现的类型
    """
    key = segre.render() if isinstance(segre, SegreType) else SegreType.parse(segre).render()
    if key not in SUPPORTED_PAIRS:
        raise UnsupportedSegreTypeError(key, SUPPORTED_PAIRS)
    count = _sign_count(key)
    signs = tuple(signs) if signs is not None else (1,) * count
    if len(signs) != count or any(s not in (1, -1) for s in signs):
        raise ValueError(f"{key} 需要 {count} 个 ±1 符号, 实际为 {signs}")

    ring = ring or constraint_ring()
    rho1, rho2, alpha, beta = (ring.var(v) for v in ("rho1", "rho2", "alpha", "beta"))
    c = ring.constant
    zero = ring.zero()

    def jordan2(eps: int, lam: MultiPoly):
        # g = [[0, ε], [ε, 0]], ρ = [[λ, 0], [1, λ]], r = g·ρ
        return [[0, eps], [eps, 0]], [[c(eps), lam * eps], [lam * eps, zero]]

    if key == "{(11)(11)}":
        e1, e2, e3, e4 = signs
        return _build_pair(
            key, signs,
            [[[e1]], [[e2]], [[e3]], [[e4]]],
            [[[rho1 * e1]], [[rho1 * e2]], [[rho2 * e3]], [[rho2 * e4]]],
            [rho1 - rho2], ("rho1", "rho2"),
        )
    if key == "{1111~}":
        e1, e2, e3 = signs
        e4 = -e3 if variant == MetricVariant.SIGN_FLIPPED else e3
        return _build_pair(
            key, signs,
            [[[e1]], [[e2]], [[e3, 0], [0, e4]]],
            [[[rho1 * e1]], [[rho2 * e2]], [[alpha * e3, beta * e3], [beta * e3, -alpha * e3]]],
            [rho1 - rho2, beta], ("rho1", "rho2", "alpha", "beta"), variant,
        )
    if key == "{(22)}":
        e1, e2 = signs
        g1, r1 = jordan2(e1, rho1)
        g2, r2 = jordan2(e2, rho1)
        return _build_pair(key, signs, [g1, g2], [r1, r2], [], ("rho1",))

    e1, e2, e3 = signs
    if key == "{1(12)}":
        g3, r3 = jordan2(e3, rho2)
        return _build_pair(
            key, signs, [[[e1]], [[e2]], g3], [[[rho1 * e1]], [[rho2 * e2]], r3],
            [rho1 - rho2], ("rho1", "rho2"),
        )
    if key == "{(11)2}":
        g3, r3 = jordan2(e3, rho2)
        return _build_pair(
            key, signs, [[[e1]], [[e2]], g3], [[[rho1 * e1]], [[rho1 * e2]], r3],
            [rho1 - rho2], ("rho1", "rho2"),
        )
    # {(112)}
    g3, r3 = jordan2(e3, rho1)
    return _build_pair(
        key, signs, [[[e1]], [[e2]], g3], [[[rho1 * e1]], [[rho1 * e2]], r3],
        [], ("rho1",),
    )


def sign_cases(segre: Union[str, SegreType]) -> List[Tuple[int, ...]]:
    """所有 ε 符号组合"""
    key = segre.render() if isinstance(segre, SegreType) else SegreType.parse(segre).render()
    if key not in SUPPORTED_PAIRS:
        raise UnsupportedSegreTypeError(key, SUPPORTED_PAIRS)
    return list(product((1, -1), repeat=_sign_count(key)))


def random_admissible_values(pair: CanonicalPair, rng: random.Random) -> Dict[str, FieldScalar]:
    """满足假设的随机有理参数"""
    while True:
        values = {
            name: FieldScalar(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
            for name in pair.parameters
        }
        if pair.admissible(values):
            return values


def verify_canonical_pair(pair: CanonicalPair, rng: Optional[random.Random] = None, samples: int = 3) -> bool:
    """在随机可取参数下检查 g⁻¹r 的 Segre 类型与声明一致"""
    rng = rng or random.Random(0)
    for _ in range(samples):
        values = random_admissible_values(pair, rng)
        rho = ricci_operator(pair.instantiate(values), pair.metric)
        try:
            measured = segre_type(rho)
        except SegreIndeterminateError:
            continue
        if measured != pair.segre:
            logger.debug(f"{pair.describe()} 在 {values} 处测得 {measured.render()}")
            return False
    return True


# ============ 判别谓词 ============

@dataclass
class Predicates:
    einstein: bool
    conformally_flat: bool
    ricci_parallel: bool
    sw_zero: bool
    locally_symmetric: bool

    def as_dict(self) -> Dict[str, bool]:
        return {
            "einstein": self.einstein,
            "conformally_flat": self.conformally_flat,
            "ricci_parallel": self.ricci_parallel,
            "sw_zero": self.sw_zero,
            "locally_symmetric": self.locally_symmetric,
        }


def is_einstein(report: CurvatureReport) -> bool:
    """r = (s/n)·g"""
    n = report.dim
    lam = report.scalar / n
    g = report.metric.array
    return all(
        not (report.ricci[i, j] - lam * g[i, j])
        for i, j in product(range(n), repeat=2)
    )


def predicates(report: CurvatureReport) -> Predicates:
    return Predicates(
        einstein=is_einstein(report),
        conformally_flat=is_zero_tensor(report.W),
        ricci_parallel=report.ricci_parallel,
        sw_zero=report.sw_zero,
        locally_symmetric=report.locally_symmetric,
    )


def segre_consistent(report: CurvatureReport, segre: Optional[SegreType] = None, tolerance: float = 1e-9) -> bool:
    """SW = 0 且非 Einstein、非共形平坦、非 Ricci 平行时, Segre 类型必须在允许列表中"""
    p = predicates(report)
    if not p.sw_zero or p.einstein or p.conformally_flat or p.ricci_parallel:
        return True
    if segre is None:
        segre = segre_type(ricci_operator(report.ricci, report.metric), tolerance)
    return segre.render() in SW_NONTRIVIAL_TYPES
