"""李代数服务: 结构常数、括号与 Jacobi 恒等式"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from loguru import logger

from ..core.field import FieldScalar, Number, ZERO
from ..core.matrix import DimensionMismatchError
from ..core.poly import MultiPoly, PolyRing


class JacobiViolationError(ValueError):
    """结构常数不满足 Jacobi 恒等式"""

    def __init__(self, violations: List["JacobiViolation"]):
        self.violations = violations
        detail = "; ".join(v.describe() for v in violations[:4])
        more = f" 等共 {len(violations)} 处" if len(violations) > 4 else ""
        super().__init__(f"Jacobi 恒等式不成立: {detail}{more}")


def structure_constant_name(i: int, j: int, k: int) -> str:
    """C_{ij}^k 的变量名(1 起始下标)"""
    return f"C_{i}_{j}^{k}"


def structure_constant_names(dim: int = 4) -> List[str]:
    """所有 i < j 的结构常数变量名, 按 (i, j, k) 字典序"""
    return [
        structure_constant_name(i, j, k)
        for i in range(1, dim + 1)
        for j in range(i + 1, dim + 1)
        for k in range(1, dim + 1)
    ]


@dataclass
class JacobiViolation:
    """一处 Jacobi 违反: 三元组 (i, j, k)(1 起始)及残差向量"""

    i: int
    j: int
    k: int
    residual: List[Any]

    def describe(self) -> str:
        terms = [f"{v}·e{l + 1}" for l, v in enumerate(self.residual) if v]
        return f"({self.i},{self.j},{self.k}) → " + (" + ".join(terms) or "0")


@dataclass
class JacobiResult:
    ok: bool
    violations: List[JacobiViolation] = field(default_factory=list)


class LieAlgebra:
    """
    由结构常数给出的 n 维李代数, [e_i, e_j] = Σ_k C_ij^k e_k

    只存储 i < j 的常数, 反对称由构造保证。元素可以是 FieldScalar
    (具体代数), 也可以是 MultiPoly(符号代数)。
    """

    def __init__(self, dim: int, constants: Mapping[Tuple[int, int, int], Any], d: int = 1):
        """
        Args:
            dim: 维数(n ≥ 3)
            constants: {(i, j, k): C_ij^k}, 1 起始且 i < j; 未给出的为零
            d: 数域 Q(√d)
        """
        if dim < 3:
            raise DimensionMismatchError(f"维数必须至少为 3, 实际为 {dim}")
        self.dim = dim
        self.d = d
        self._C: List[List[List[Any]]] = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), value in constants.items():
            if not (1 <= i < j <= dim and 1 <= k <= dim):
                raise DimensionMismatchError(f"结构常数下标不合法: C_{i}{j}^{k}")
            if isinstance(value, (int, Fraction, FieldScalar)):
                value = FieldScalar.of(value, d)
            self._C[i - 1][j - 1][k - 1] = value
            self._C[j - 1][i - 1][k - 1] = -value

    # ============ 构造 ============

    @classmethod
    def abelian(cls, dim: int = 4, d: int = 1) -> "LieAlgebra":
        return cls(dim, {}, d)

    @classmethod
    def symbolic(cls, ring: PolyRing, dim: int = 4) -> "LieAlgebra":
        """所有结构常数都是环中的变量"""
        constants = {}
        for i in range(1, dim + 1):
            for j in range(i + 1, dim + 1):
                for k in range(1, dim + 1):
                    constants[(i, j, k)] = ring.var(structure_constant_name(i, j, k))
        return cls(dim, constants)

    def C(self, i: int, j: int, k: int) -> Any:
        """C_ij^k, 0 起始下标, 任意 i, j"""
        return self._C[i][j][k]

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(v, MultiPoly) for plane in self._C for row in plane for v in row)

    def constants(self) -> Dict[Tuple[int, int, int], Any]:
        """非零的 i < j 常数(1 起始)"""
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    if self._C[i][j][k]:
                        out[(i + 1, j + 1, k + 1)] = self._C[i][j][k]
        return out

    def assignment(self) -> Dict[str, FieldScalar]:
        """变量名 → 数值, 用于在符号方程上求值"""
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    out[structure_constant_name(i + 1, j + 1, k + 1)] = self._C[i][j][k]
        return out

    def substitute(self, values: Mapping[str, Number]) -> "LieAlgebra":
        """符号代数在某点取值, 得到具体代数"""
        constants = {}
        for (i, j, k), v in self.constants().items():
            if isinstance(v, MultiPoly):
                v = v.substitute(values)
                if not v.is_constant():
                    raise ValueError(f"代入后 C_{i}{j}^{k} 仍含变量: {v}")
                v = v.constant_value()
            constants[(i, j, k)] = v
        return LieAlgebra(self.dim, constants, self.d)

    # ============ 括号 ============

    def bracket_basis(self, i: int, j: int) -> List[Any]:
        """[e_i, e_j] 的分量(0 起始)"""
        return list(self._C[i][j])

    def bracket(self, x: Sequence[Any], y: Sequence[Any]) -> List[Any]:
        """双线性括号 [x, y]"""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatchError(f"向量长度必须为 {self.dim}")
        out = [ZERO] * self.dim
        for i in range(self.dim):
            if not x[i]:
                continue
            for j in range(self.dim):
                if i == j or not y[j]:
                    continue
                coeff = x[i] * y[j]
                for k in range(self.dim):
                    c = self._C[i][j][k]
                    if c:
                        out[k] = out[k] + coeff * c
        return out

    def ad(self, x: Sequence[Any]) -> List[List[Any]]:
        """ad_x 的矩阵, 第 k 列为 [x, e_k]"""
        cols = []
        for k in range(self.dim):
            e_k = [ZERO] * self.dim
            e_k[k] = FieldScalar.of(1, self.d)
            cols.append(self.bracket(x, e_k))
        return [[cols[c][r] for c in range(self.dim)] for r in range(self.dim)]

    def is_unimodular(self) -> bool:
        """tr(ad_{e_i}) = Σ_k C_ik^k = 0 对所有 i"""
        return all(
            not sum((self._C[i][k][k] for k in range(self.dim)), ZERO)
            for i in range(self.dim)
        )

    # ============ Jacobi ============

    def _jacobi_residual(self, i: int, j: int, k: int) -> List[Any]:
        n = self.dim
        out = [ZERO] * n
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m in range(n):
                cm = self._C[a][b][m]
                if not cm:
                    continue
                for l in range(n):
                    cl = self._C[m][c][l]
                    if cl:
                        out[l] = out[l] + cm * cl
        return out

    def jacobi_check(self) -> JacobiResult:
        """
        检查 [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0

        对所有 i < j < k 穷举, 不在首个违反处停止。
        """
        violations = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    residual = self._jacobi_residual(i, j, k)
                    if any(residual):
                        violations.append(JacobiViolation(i + 1, j + 1, k + 1, residual))
        if violations:
            logger.debug(f"Jacobi 检查发现 {len(violations)} 处违反")
        return JacobiResult(ok=not violations, violations=violations)

    @cached_property
    def is_valid(self) -> bool:
        return self.jacobi_check().ok

    def require_valid(self) -> "LieAlgebra":
        """Jacobi 不成立时抛出 JacobiViolationError"""
        result = self.jacobi_check()
        if not result.ok:
            raise JacobiViolationError(result.violations)
        return self

    def jacobi_polynomials(self) -> List[MultiPoly]:
        """Jacobi 残差的所有分量(i<j<k, l), 符号代数下为二次多项式"""
        polys = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    polys.extend(self._jacobi_residual(i, j, k))
        return polys

    def __repr__(self) -> str:
        body = ", ".join(f"C{i}{j}^{k}={v}" for (i, j, k), v in self.constants().items())
        return f"LieAlgebra(dim={self.dim}, {body or 'abelian'})"


def jacobi_polynomials(ring: PolyRing, dim: int = 4) -> List[MultiPoly]:
    """
    符号 Jacobi 方程: 对 i<j<k 与 l = 1..n,
    Σ_m (C_ij^m C_mk^l + C_jk^m C_mi^l + C_ki^m C_mj^l)

    Returns:
        n = 4 时共 16 个多项式
    """
    algebra = LieAlgebra.symbolic(ring, dim)
    return [p if isinstance(p, MultiPoly) else ring.constant(p) for p in algebra.jacobi_polynomials()]


def basis_vector(k: int, dim: int = 4, d: int = 1) -> List[FieldScalar]:
    """第 k 个基向量(0 起始)"""
    vec = [ZERO] * dim
    vec[k] = FieldScalar.of(1, d)
    return vec

