"""Q(√d) 上的小型稠密矩阵"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .field import FieldScalar, Number, ZERO, ONE


class SingularMatrixError(ValueError):
    """矩阵不可逆"""
    pass


class DimensionMismatchError(ValueError):
    """矩阵或向量维度不匹配"""
    pass


def _scalar(value) -> FieldScalar:
    return FieldScalar.of(value)


class Matrix:
    """
    不可变的 m×n 精确矩阵

    所有元素都是 FieldScalar; 运算结果总是返回新矩阵。
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[Number]]):
        data = tuple(tuple(_scalar(v) for v in row) for row in rows)
        if not data:
            raise DimensionMismatchError("矩阵至少需要一行")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionMismatchError("矩阵各行长度不一致")
        self._rows: Tuple[Tuple[FieldScalar, ...], ...] = data
        self.nrows = len(data)
        self.ncols = width

    # ============ 构造 ============

    @classmethod
    def zeros(cls, m: int, n: int = None) -> "Matrix":
        n = m if n is None else n
        return cls([[ZERO] * n for _ in range(m)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence[Number]) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.nrows for b in blocks)
        rows = [[ZERO] * n for _ in range(n)]
        offset = 0
        for block in blocks:
            for i in range(block.nrows):
                for j in range(block.ncols):
                    rows[offset + i][offset + j] = block[i, j]
            offset += block.nrows
        return cls(rows)

    # ============ 访问 ============

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index: Tuple[int, int]) -> FieldScalar:
        i, j = index
        return self._rows[i][j]

    def rows(self) -> List[List[FieldScalar]]:
        return [list(row) for row in self._rows]

    def row(self, i: int) -> List[FieldScalar]:
        return list(self._rows[i])

    def column(self, j: int) -> List[FieldScalar]:
        return [row[j] for row in self._rows]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(v) for v in row) for row in self._rows)
        return f"Matrix([{body}])"

    # ============ 算术 ============

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"形状不一致: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self._rows])

    def scale(self, c: Number) -> "Matrix":
        c = _scalar(c)
        return Matrix([[c * a for a in row] for row in self._rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"无法相乘: {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for row in self._rows:
            out_row = []
            for col in cols:
                acc = ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(out)

    def apply(self, vector: Sequence[Number]) -> List[FieldScalar]:
        """矩阵乘向量"""
        if len(vector) != self.ncols:
            raise DimensionMismatchError(f"向量长度 {len(vector)} 与列数 {self.ncols} 不一致")
        vec = [_scalar(v) for v in vector]
        return [sum((a * b for a, b in zip(row, vec)), ZERO) for row in self._rows]

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square or k < 0:
            raise DimensionMismatchError("只支持方阵的非负整数次幂")
        result = Matrix.identity(self.nrows)
        for _ in range(k):
            result = result @ self
        return result

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.ncols)])

    T = property(transpose)

    def trace(self) -> FieldScalar:
        return sum((self._rows[i][i] for i in range(min(self.shape))), ZERO)

    def is_zero(self) -> bool:
        return all(not v for row in self._rows for v in row)

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def polynomial_at(self, coeffs: Sequence[Number]) -> "Matrix":
        """按升幂系数 c0 + c1·M + ... 计算矩阵多项式(Horner)"""
        n = self.nrows
        result = Matrix.zeros(n)
        eye = Matrix.identity(n)
        for c in reversed(list(coeffs)):
            result = result @ self + eye.scale(c)
        return result

    # ============ 消元 ============

    def _bareiss(self) -> Tuple[List[List[FieldScalar]], int, int]:
        """
        无分数 Bareiss 消元

        Returns:
            (消元后的行, 秩, 行交换次数)
        """
        a = self.rows()
        m, n = self.nrows, self.ncols
        prev = ONE
        rank = 0
        swaps = 0
        for col in range(n):
            if rank == m:
                break
            pivot = next((r for r in range(rank, m) if a[r][col]), None)
            if pivot is None:
                continue
            if pivot != rank:
                a[rank], a[pivot] = a[pivot], a[rank]
                swaps += 1
            for r in range(rank + 1, m):
                for c in range(col + 1, n):
                    a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev
                a[r][col] = ZERO
            prev = a[rank][col]
            rank += 1
        return a, rank, swaps

    def rank(self) -> int:
        return self._bareiss()[1]

    def nullity(self) -> int:
        return self.ncols - self.rank()

    def det(self) -> FieldScalar:
        if not self.is_square:
            raise DimensionMismatchError("行列式只对方阵定义")
        a, rank, swaps = self._bareiss()
        if rank < self.nrows:
            return ZERO
        value = a[-1][-1]
        return -value if swaps % 2 else value

    def inverse(self) -> "Matrix":
        """Gauss-Jordan 求逆"""
        if not self.is_square:
            raise DimensionMismatchError("只有方阵可以求逆")
        n = self.nrows
        a = [row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(self.rows())]
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col]), None)
            if pivot is None:
                raise SingularMatrixError("矩阵奇异, 无法求逆")
            a[col], a[pivot] = a[pivot], a[col]
            inv = a[col][col].inverse()
            a[col] = [v * inv for v in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    factor = a[r][col]
                    a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
        return Matrix([row[n:] for row in a])

    def char_poly_coeffs(self) -> List[FieldScalar]:
        """
        Faddeev-LeVerrier 特征多项式 det(λI − M)

        Returns:
            升幂系数 [c0, c1, ..., cn], cn = 1
        """
        if not self.is_square:
            raise DimensionMismatchError("特征多项式只对方阵定义")
        n = self.nrows
        coeffs = [ZERO] * (n + 1)
        coeffs[n] = ONE
        eye = Matrix.identity(n)
        m_k = Matrix.zeros(n)
        for k in range(1, n + 1):
            m_k = self @ m_k + eye.scale(coeffs[n - k + 1])
            coeffs[n - k] = -(self @ m_k).trace() / k
        return coeffs

    def char_poly(self, variable: str = "lambda"):
        """特征多项式, 以单变量 MultiPoly 返回"""
        from .poly import MultiPoly
        return MultiPoly.from_univariate(self.char_poly_coeffs(), variable)

    def signature(self) -> Tuple[int, int]:
        """
        对称矩阵的惯性指数 (正, 负), 通过合同对角化精确计算

        Raises:
            DimensionMismatchError: 矩阵不对称
        """
        if not self.is_symmetric():
            raise DimensionMismatchError("惯性指数只对对称矩阵定义")
        a = self.rows()
        n = self.nrows
        positive = negative = 0
        for k in range(n):
            if not a[k][k]:
                j = next((j for j in range(k + 1, n) if a[j][j]), None)
                if j is not None:
                    a[k], a[j] = a[j], a[k]
                    for row in a:
                        row[k], row[j] = row[j], row[k]
                else:
                    j = next((j for j in range(k + 1, n) if a[k][j]), None)
                    if j is None:
                        continue
                    # e_k ← e_k + e_j, 对角元变为 2·a_kj
                    for c in range(n):
                        a[k][c] = a[k][c] + a[j][c]
                    for r in range(n):
                        a[r][k] = a[r][k] + a[r][j]
            pivot = a[k][k]
            # Schur 补: 对称地消去第 k 行与第 k 列
            for r in range(k + 1, n):
                for c in range(k + 1, n):
                    if a[r][k] and a[k][c]:
                        a[r][c] = a[r][c] - a[r][k] * a[k][c] / pivot
            for r in range(k + 1, n):
                a[r][k] = ZERO
                a[k][r] = ZERO
            if pivot.sign() > 0:
                positive += 1
            else:
                negative += 1
        return positive, negative


def rational_matrix(rows: Iterable[Iterable]) -> Matrix:
    """从 int / Fraction / 字符串 构造矩阵, 便于测试与解析"""
    def conv(v):
        if isinstance(v, str):
            return FieldScalar.parse(v)
        if isinstance(v, float):
            return FieldScalar(Fraction(v).limit_denominator())
        return v
    return Matrix([[conv(v) for v in row] for row in rows])
