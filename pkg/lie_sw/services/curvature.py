"""
曲率服务: 左不变伪黎曼度量的联络、曲率与 Schouten-Weyl 张量

约定:
    [e_i, e_j] = Σ_k C_ij^k e_k
    ∇_{e_i} e_j = Σ_k Γ^k_ij e_k, 数组下标 gamma[i, j, k]
    R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z, R[i, j, k, l] = ⟨R(e_i,e_j)e_k, e_l⟩
    r_jk = g^{il} R_ijkl
    (∇_a T)(b, ...) = −Σ_m Γ^m_ab T(m, ...) − ...  (左不变张量的分量为常数)

张量用 numpy 的 object 数组存储, 元素可以是 FieldScalar 或 MultiPoly。
"""

import time
from dataclasses import dataclass
from itertools import product
from typing import Any, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..core.field import FieldScalar, Number, ZERO
from ..core.matrix import DimensionMismatchError, Matrix
from .lie_algebra import LieAlgebra

HALF = FieldScalar(1) / 2


class DegenerateMetricError(ValueError):
    """度量退化(det g = 0)"""
    pass


class ConnectionCheckError(RuntimeError):
    """Levi-Civita 联络未通过无挠或度量相容性检查"""
    pass


# ============ 张量工具 ============

def zeros(shape: Tuple[int, ...]) -> np.ndarray:
    return np.full(shape, ZERO, dtype=object)


def is_zero_tensor(t: np.ndarray) -> bool:
    return all(not v for v in t.flat)


def tensor_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(not (x - y) for x, y in zip(a.flat, b.flat))


def as_matrix(t: np.ndarray) -> Matrix:
    return Matrix(t.tolist())


# ============ 度量 ============

class Metric:
    """
    非退化对称双线性型 g

    构造时检查对称性与非退化性, 并缓存精确逆矩阵。
    """

    def __init__(self, g: Matrix):
        if not g.is_square:
            raise DimensionMismatchError(f"度量必须是方阵, 实际为 {g.shape}")
        if not g.is_symmetric():
            raise DimensionMismatchError("度量矩阵必须对称")
        if not g.det():
            raise DegenerateMetricError("度量退化: det(g) = 0")
        self.g = g
        self.g_inv = g.inverse()
        self.dim = g.nrows
        self.array = np.array(g.rows(), dtype=object)
        self.inv_array = np.array(self.g_inv.rows(), dtype=object)

    @classmethod
    def diag(cls, values: Sequence[Number]) -> "Metric":
        return cls(Matrix.diag([FieldScalar.of(v) for v in values]))

    @classmethod
    def identity(cls, dim: int = 4) -> "Metric":
        return cls(Matrix.identity(dim))

    def __getitem__(self, index: Tuple[int, int]) -> FieldScalar:
        return self.g[index]

    def inner(self, x: Sequence[Any], y: Sequence[Any]) -> Any:
        total = ZERO
        for i, j in product(range(self.dim), repeat=2):
            if x[i] and y[j] and self.g[i, j]:
                total = total + x[i] * y[j] * self.g[i, j]
        return total

    @property
    def signature(self) -> Tuple[int, int]:
        """(正惯性指数, 负惯性指数)"""
        return self.g.signature()

    @property
    def is_riemannian(self) -> bool:
        return self.signature[1] == 0

    @property
    def is_lorentzian(self) -> bool:
        return min(self.signature) == 1

    @property
    def is_neutral(self) -> bool:
        p, q = self.signature
        return p == q

    def scaled(self, c: Number) -> "Metric":
        return Metric(self.g.scale(c))

    def __eq__(self, other) -> bool:
        return isinstance(other, Metric) and self.g == other.g

    def __repr__(self) -> str:
        return f"Metric({self.g!r})"


# ============ 联络 ============

@dataclass
class Connection:
    """Levi-Civita 联络: gamma[i,j,k] = Γ^k_ij, lower[i,j,k] = ⟨∇_{e_i}e_j, e_k⟩"""

    gamma: np.ndarray
    lower: np.ndarray

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]


def is_torsion_free(conn: Connection, algebra: LieAlgebra) -> bool:
    """∇_{e_i}e_j − ∇_{e_j}e_i = [e_i, e_j]"""
    n = conn.dim
    return all(
        not (conn.gamma[i, j, k] - conn.gamma[j, i, k] - algebra.C(i, j, k))
        for i, j, k in product(range(n), repeat=3)
    )


def is_metric_compatible(conn: Connection) -> bool:
    """⟨∇_{e_i}e_j, e_k⟩ + ⟨e_j, ∇_{e_i}e_k⟩ = 0"""
    n = conn.dim
    return all(
        not (conn.lower[i, j, k] + conn.lower[i, k, j])
        for i, j, k in product(range(n), repeat=3)
    )


def levi_civita(algebra: LieAlgebra, metric: Metric, check: bool = True) -> Connection:
    """
    Koszul 公式(左不变场):
    2⟨∇_{e_i}e_j, e_k⟩ = ⟨[e_i,e_j],e_k⟩ − ⟨[e_j,e_k],e_i⟩ + ⟨[e_k,e_i],e_j⟩

    Args:
        algebra: 李代数(可以是符号代数)
        metric: 非退化度量
        check: 是否逐分量验证无挠与度量相容

    Raises:
        ConnectionCheckError: 检查不通过
    """
    n = algebra.dim
    if metric.dim != n:
        raise DimensionMismatchError(f"度量维数 {metric.dim} 与李代数维数 {n} 不一致")
    g = metric.array
    C = algebra.C

    def pair(a: int, b: int, c: int) -> Any:
        # ⟨[e_a, e_b], e_c⟩
        total = ZERO
        for m in range(n):
            if g[m, c]:
                cm = C(a, b, m)
                if cm:
                    total = total + cm * g[m, c]
        return total

    lower = zeros((n, n, n))
    for i, j, k in product(range(n), repeat=3):
        lower[i, j, k] = (pair(i, j, k) - pair(j, k, i) + pair(k, i, j)) * HALF

    g_inv = metric.inv_array
    gamma = zeros((n, n, n))
    for i, j, k in product(range(n), repeat=3):
        total = ZERO
        for l in range(n):
            if g_inv[k, l] and lower[i, j, l]:
                total = total + lower[i, j, l] * g_inv[k, l]
        gamma[i, j, k] = total

    conn = Connection(gamma=gamma, lower=lower)
    if check:
        if not is_torsion_free(conn, algebra):
            raise ConnectionCheckError("联络不是无挠的")
        if not is_metric_compatible(conn):
            raise ConnectionCheckError("联络与度量不相容")
    return conn


# ============ 曲率 ============

def riemann(algebra: LieAlgebra, conn: Connection, metric: Metric) -> np.ndarray:
    """
    R^l_ijk = Σ_m (Γ^m_jk Γ^l_im − Γ^m_ik Γ^l_jm − C_ij^m Γ^l_mk),
    R_ijkl = Σ_p R^p_ijk g_pl
    """
    n = algebra.dim
    gam = conn.gamma
    upper = zeros((n, n, n, n))
    for i, j, k, l in product(range(n), repeat=4):
        if i == j:
            continue
        total = ZERO
        for m in range(n):
            a, b = gam[j, k, m], gam[i, m, l]
            if a and b:
                total = total + a * b
            a, b = gam[i, k, m], gam[j, m, l]
            if a and b:
                total = total - a * b
            a, b = algebra.C(i, j, m), gam[m, k, l]
            if a and b:
                total = total - a * b
        upper[i, j, k, l] = total

    g = metric.array
    R = zeros((n, n, n, n))
    for i, j, k, l in product(range(n), repeat=4):
        total = ZERO
        for p in range(n):
            if g[p, l] and upper[i, j, k, p]:
                total = total + upper[i, j, k, p] * g[p, l]
        R[i, j, k, l] = total
    return R


def ricci(R: np.ndarray, metric: Metric) -> Tuple[np.ndarray, Any]:
    """
    r_jk = g^{il} R_ijkl, s = g^{jk} r_jk

    Returns:
        (r, s)
    """
    n = metric.dim
    g_inv = metric.inv_array
    r = zeros((n, n))
    for j, k in product(range(n), repeat=2):
        total = ZERO
        for i, l in product(range(n), repeat=2):
            if g_inv[i, l] and R[i, j, k, l]:
                total = total + R[i, j, k, l] * g_inv[i, l]
        r[j, k] = total
    s = ZERO
    for j, k in product(range(n), repeat=2):
        if g_inv[j, k] and r[j, k]:
            s = s + r[j, k] * g_inv[j, k]
    return r, s


def one_dim_curvature(r: np.ndarray, s: Any, metric: Metric, n: Optional[int] = None) -> np.ndarray:
    """
    一维曲率张量 A = (r − s·g/(2(n−1))) / (n−2)

    Raises:
        DimensionMismatchError: n < 3
    """
    n = metric.dim if n is None else n
    if n < 3:
        raise DimensionMismatchError(f"一维曲率张量要求 n ≥ 3, 实际为 {n}")
    c_s = FieldScalar(1) / (2 * (n - 1))
    c_n = FieldScalar(1) / (n - 2)
    A = zeros(r.shape)
    for i, j in product(range(metric.dim), repeat=2):
        A[i, j] = (r[i, j] - s * metric.array[i, j] * c_s) * c_n
    return A


def covariant_derivative(T: np.ndarray, conn: Connection) -> np.ndarray:
    """
    左不变 (0,k) 张量的协变导数

    Returns:
        D, D[a, b1, ..., bk] = (∇_{e_a} T)(e_b1, ..., e_bk)
    """
    n = conn.dim
    rank = T.ndim
    gam = conn.gamma
    D = zeros((n,) + T.shape)
    for a in range(n):
        for idx in product(range(n), repeat=rank):
            total = ZERO
            for slot in range(rank):
                b = idx[slot]
                for m in range(n):
                    coeff = gam[a, b, m]
                    if not coeff:
                        continue
                    shifted = idx[:slot] + (m,) + idx[slot + 1:]
                    value = T[shifted]
                    if value:
                        total = total - coeff * value
            D[(a,) + idx] = total
    return D


def codazzi_defect(T: np.ndarray, conn: Connection) -> np.ndarray:
    """
    对称 2-张量的 Codazzi 差: out[x, y, z] = (∇_z T)(x, y) − (∇_y T)(x, z)
    """
    D = covariant_derivative(T, conn)
    n = conn.dim
    out = zeros((n, n, n))
    for x, y, z in product(range(n), repeat=3):
        out[x, y, z] = D[z, x, y] - D[y, x, z]
    return out


def schouten_weyl(A: np.ndarray, conn: Connection) -> np.ndarray:
    """SW(X,Y,Z) = (∇_Z A)(X,Y) − (∇_Y A)(X,Z)"""
    return codazzi_defect(A, conn)


def kulkarni_nomizu(A: np.ndarray, metric: Metric) -> np.ndarray:
    """(A⊙g)_ijkl = A_il g_jk + A_jk g_il − A_ik g_jl − A_jl g_ik"""
    n = metric.dim
    g = metric.array
    out = zeros((n, n, n, n))
    for i, j, k, l in product(range(n), repeat=4):
        out[i, j, k, l] = (
            A[i, l] * g[j, k] + A[j, k] * g[i, l]
            - A[i, k] * g[j, l] - A[j, l] * g[i, k]
        )
    return out


def weyl(R: np.ndarray, A: np.ndarray, metric: Metric) -> np.ndarray:
    """W = R − A⊙g"""
    return R - kulkarni_nomizu(A, metric)


def div_weyl(W: np.ndarray, conn: Connection, metric: Metric) -> np.ndarray:
    """
    (div W)(X,Y,Z) = −Σ g^{ab} (∇_{e_a} W)(e_b, X, Y, Z)

    在本存储约定下 div W = −(n−3)·SW。
    """
    n = metric.dim
    D = covariant_derivative(W, conn)
    g_inv = metric.inv_array
    out = zeros((n, n, n))
    for x, y, z in product(range(n), repeat=3):
        total = ZERO
        for a, b in product(range(n), repeat=2):
            if g_inv[a, b] and D[a, b, x, y, z]:
                total = total - D[a, b, x, y, z] * g_inv[a, b]
        out[x, y, z] = total
    return out


def identity_check(SW: np.ndarray, divW: np.ndarray, n: int) -> bool:
    """
    检查 (n−3)·SW + div W = 0, 即 SW = −(n−3)·div W 在 n = 4 时的形式

    Raises:
        DimensionMismatchError: n < 4
    """
    if n < 4:
        raise DimensionMismatchError(f"散度恒等式要求 n ≥ 4, 实际为 {n}")
    return all(not (sw * (n - 3) + dw) for sw, dw in zip(SW.flat, divW.flat))


def nabla_ricci(r: np.ndarray, conn: Connection) -> np.ndarray:
    """∇r, out[i, j, k] = (∇_{e_k} r)(e_i, e_j)"""
    D = covariant_derivative(r, conn)
    return np.transpose(D, (1, 2, 0))


def codazzi_check(nabla_r: np.ndarray) -> bool:
    """(∇_Z r)(X,Y) = (∇_Y r)(X,Z) 对所有基向量成立"""
    n = nabla_r.shape[0]
    return all(
        not (nabla_r[i, j, k] - nabla_r[i, k, j])
        for i, j, k in product(range(n), repeat=3)
    )


# ============ 代数对称性检查 ============

def has_curvature_symmetries(R: np.ndarray) -> bool:
    """R_ijkl = −R_jikl = −R_ijlk = R_klij"""
    n = R.shape[0]
    for i, j, k, l in product(range(n), repeat=4):
        v = R[i, j, k, l]
        if (v + R[j, i, k, l]) or (v + R[i, j, l, k]) or (v - R[k, l, i, j]):
            return False
    return True


def first_bianchi_holds(R: np.ndarray) -> bool:
    """R_ijkl + R_jkil + R_kijl = 0"""
    n = R.shape[0]
    return all(
        not (R[i, j, k, l] + R[j, k, i, l] + R[k, i, j, l])
        for i, j, k, l in product(range(n), repeat=4)
    )


def weyl_traces(W: np.ndarray, metric: Metric) -> np.ndarray:
    """所有缩并 Σ g^{il} W_ijkl"""
    n = metric.dim
    g_inv = metric.inv_array
    out = zeros((n, n))
    for j, k in product(range(n), repeat=2):
        total = ZERO
        for i, l in product(range(n), repeat=2):
            if g_inv[i, l] and W[i, j, k, l]:
                total = total + W[i, j, k, l] * g_inv[i, l]
        out[j, k] = total
    return out


def is_trace_free(W: np.ndarray, metric: Metric) -> bool:
    return is_zero_tensor(weyl_traces(W, metric))


def sectional_curvature(R: np.ndarray, metric: Metric, x: Sequence[Number], y: Sequence[Number]) -> FieldScalar:
    """
    K(x, y) = R(x,y,y,x) / (g(x,x)g(y,y) − g(x,y)²)

    Raises:
        ValueError: 平面退化(分母为零)
    """
    n = metric.dim
    x = [FieldScalar.of(v) for v in x]
    y = [FieldScalar.of(v) for v in y]
    denom = metric.inner(x, x) * metric.inner(y, y) - metric.inner(x, y) ** 2
    if not denom:
        raise ValueError("退化平面没有截面曲率")
    num = ZERO
    for i, j, k, l in product(range(n), repeat=4):
        if x[i] and y[j] and y[k] and x[l] and R[i, j, k, l]:
            num = num + x[i] * y[j] * y[k] * x[l] * R[i, j, k, l]
    return num / denom


# ============ 汇总 ============

@dataclass
class CurvatureReport:
    """一个度量李代数的全部曲率量"""

    algebra: LieAlgebra
    metric: Metric
    connection: Connection
    R: np.ndarray
    ricci: np.ndarray
    scalar: FieldScalar
    A: np.ndarray
    W: np.ndarray
    SW: np.ndarray
    divW: np.ndarray
    nabla_r: np.ndarray
    nabla_R: np.ndarray

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def Gamma(self) -> np.ndarray:
        return self.connection.gamma

    @property
    def ricci_matrix(self) -> Matrix:
        return as_matrix(self.ricci)

    @property
    def sw_zero(self) -> bool:
        return is_zero_tensor(self.SW)

    @property
    def codazzi_holds(self) -> bool:
        return codazzi_check(self.nabla_r)

    @property
    def identity_holds(self) -> bool:
        return identity_check(self.SW, self.divW, self.dim)

    @property
    def ricci_parallel(self) -> bool:
        return is_zero_tensor(self.nabla_r)

    @property
    def conformally_flat(self) -> bool:
        return is_zero_tensor(self.W)

    @property
    def locally_symmetric(self) -> bool:
        return is_zero_tensor(self.nabla_R)

    def sectional_curvature(self, x: Sequence[Number], y: Sequence[Number]) -> FieldScalar:
        return sectional_curvature(self.R, self.metric, x, y)


def compute_curvature(algebra: LieAlgebra, metric: Metric, check: bool = True) -> CurvatureReport:
    """
    计算完整的曲率报告

    Args:
        algebra: 满足 Jacobi 恒等式的具体李代数
        metric: 非退化度量
        check: 是否验证联络与曲率的代数性质

    Returns:
        CurvatureReport
    """
    start_time = time.time()
    n = algebra.dim
    logger.debug(f"开始计算曲率: dim={n}, 度量惯性指数={metric.signature}")

    conn = levi_civita(algebra, metric, check=check)
    R = riemann(algebra, conn, metric)
    if check and not (has_curvature_symmetries(R) and first_bianchi_holds(R)):
        raise ConnectionCheckError("Riemann 张量不满足代数曲率对称性")
    r, s = ricci(R, metric)
    A = one_dim_curvature(r, s, metric)
    W = weyl(R, A, metric)
    SW = schouten_weyl(A, conn)
    divW = div_weyl(W, conn, metric) if n >= 4 else zeros((n, n, n))
    nr = nabla_ricci(r, conn)
    nR = covariant_derivative(R, conn)

    elapsed = time.time() - start_time
    logger.debug(f"曲率计算完成, 耗时: {elapsed:.2f}秒")
    return CurvatureReport(
        algebra=algebra,
        metric=metric,
        connection=conn,
        R=R,
        ricci=r,
        scalar=s,
        A=A,
        W=W,
        SW=SW,
        divW=divW,
        nabla_r=nr,
        nabla_R=nR,
    )
