"""二次数域 Q(√d) 上的精确标量"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

Number = Union[int, Fraction, "FieldScalar"]


class FieldMismatchError(ValueError):
    """两个不同根式 √d 混用"""
    pass


@lru_cache(maxsize=None)
def is_square_free(d: int) -> bool:
    """判断非负整数是否无平方因子(0 与 1 视为合法)"""
    if d < 0:
        return False
    if d in (0, 1):
        return True
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """有理数的有理平方根,不存在时返回None"""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, eq=False)
class FieldScalar:
    """
    精确数 p + q√d

    d 在一次计算中共享; d ∈ {0, 1} 时退化为纯有理数(q 被并入 p)。
    只有 q ≠ 0 的元素才"携带"根式, 纯有理数可以和任意 d 的元素运算。
    """

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        p = Fraction(self.p)
        q = Fraction(self.q)
        d = int(self.d)
        if not is_square_free(d):
            raise ValueError(f"d = {d} 不是无平方因子的非负整数")
        if d == 1:
            p, q = p + q, Fraction(0)
        elif d == 0:
            q = Fraction(0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    # ============ 构造 ============

    @classmethod
    def of(cls, value: Number, d: int = 1) -> "FieldScalar":
        """把 int / Fraction / FieldScalar 统一转换为 FieldScalar"""
        if isinstance(value, FieldScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value), Fraction(0), d)
        raise TypeError(f"无法转换为FieldScalar: {value!r}")

    @classmethod
    def sqrt_of(cls, d: int) -> "FieldScalar":
        """√d 本身"""
        return cls(Fraction(0), Fraction(1), d)

    @classmethod
    def parse(cls, text: str, d: Optional[int] = None) -> "FieldScalar":
        """
        解析 `p/q+r/s*sqrt(d)` 形式的精确值

        Args:
            text: 值字符串, 例如 "-sqrt(3)"、"1/2-3*sqrt(2)"、"4"
            d: 期望的根式; 给定时与字符串中的根式不一致会报错

        Returns:
            FieldScalar
        """
        match = _VALUE_RE.match(text)
        if not match or not (match.group("p") or match.group("d")):
            raise ValueError(f"无法解析数值: {text!r}")
        if match.group("p") and match.group("d") and not match.group("sign"):
            raise ValueError(f"有理部分与根式之间缺少符号: {text!r}")

        p = Fraction(match.group("p")) if match.group("p") else Fraction(0)
        if not match.group("d"):
            return cls(p, Fraction(0), d if d is not None else 1)

        radicand = int(match.group("d"))
        q = Fraction(match.group("q")) if match.group("q") else Fraction(1)
        if match.group("sign") == "-":
            q = -q
        if radicand in (0, 1):
            return cls(p + q * radicand, Fraction(0), d if d is not None else 1)
        if not is_square_free(radicand):
            raise ValueError(f"sqrt({radicand}) 的被开方数必须无平方因子")
        if d is not None and d != radicand:
            raise FieldMismatchError(f"根式 sqrt({radicand}) 与当前数域 sqrt({d}) 不一致")
        return cls(p, q, radicand)

    # ============ 基本属性 ============

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def conjugate(self) -> "FieldScalar":
        """p + q√d → p − q√d"""
        return FieldScalar(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        """域范数 p² − q²d"""
        return self.p * self.p - self.q * self.q * self.d

    def sign(self) -> int:
        """在实嵌入(√d > 0)下的符号"""
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # 符号相反: 比较 p² 与 q²d
        diff = self.p * self.p - self.q * self.q * self.d
        return sp if diff > 0 else (sq if diff < 0 else 0)

    def __float__(self) -> float:
        if self.q == 0:
            return float(self.p)
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    # ============ 运算 ============

    def _field_with(self, other: "FieldScalar") -> int:
        if self.q and other.q and self.d != other.d:
            raise FieldMismatchError(f"不能混用 sqrt({self.d}) 与 sqrt({other.d})")
        if self.q:
            return self.d
        if other.q:
            return other.d
        return self.d if self.d > 1 else other.d

    @staticmethod
    def _coerce(value) -> Optional["FieldScalar"]:
        if isinstance(value, FieldScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return FieldScalar(Fraction(value))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field_with(o)
        return FieldScalar(self.p + o.p, self.q + o.q, d)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(-self.p, -self.q, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field_with(o)
        return FieldScalar(self.p - o.p, self.q - o.q, d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field_with(o)
        if self.q == 0 and o.q == 0:
            return FieldScalar(self.p * o.p, Fraction(0), d)
        return FieldScalar(
            self.p * o.p + self.q * o.q * d,
            self.p * o.q + self.q * o.p,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldScalar":
        """1/(p+q√d) = (p−q√d)/(p²−q²d)"""
        if self.is_zero():
            raise ZeroDivisionError("FieldScalar 除以零")
        den = self.norm()
        # d 无平方因子且不是完全平方时, 非零元素的范数不可能为零
        assert den != 0, f"非零元素范数为零: {self}"
        return FieldScalar(self.p / den, -self.q / den, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = FieldScalar(Fraction(1), Fraction(0), self.d)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # ============ 比较 ============

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    # ============ 开方 ============

    def sqrt_in_field(self) -> Optional["FieldScalar"]:
        """
        在 Q(√d) 内求非负平方根

        Returns:
            非负平方根; 若平方根不在域内(或自身为负)则返回None
        """
        if self.is_zero():
            return self
        if self.sign() < 0:
            return None
        d = self.d
        if self.q == 0:
            root = rational_sqrt(self.p)
            if root is not None:
                return FieldScalar(root, Fraction(0), d)
            if d > 1:
                root = rational_sqrt(self.p / d)
                if root is not None:
                    return FieldScalar(Fraction(0), root, d)
            return None

        # (u + v√d)² = p + q√d  ⇔  u² + d v² = p, 2uv = q
        s = rational_sqrt(self.norm())
        if s is None:
            return None
        for u_sq in ((self.p + s) / 2, (self.p - s) / 2):
            u = rational_sqrt(u_sq)
            if not u:
                continue
            candidate = FieldScalar(u, self.q / (2 * u), d)
            if candidate * candidate == self:
                return candidate if candidate.sign() >= 0 else -candidate
        return None

    # ============ 格式化 ============

    def to_exact_string(self) -> str:
        """机器格式: `p/q+r/s*sqrt(d)`"""
        if self.q == 0:
            return str(self.p)
        radical = f"sqrt({self.d})"
        if abs(self.q) == 1:
            q_part = radical
        else:
            q_part = f"{abs(self.q)}*{radical}"
        if self.p == 0:
            return q_part if self.q > 0 else f"-{q_part}"
        return f"{self.p}{'+' if self.q > 0 else '-'}{q_part}"

    def to_decimal_string(self, digits: int = 12) -> str:
        """十进制近似, 默认12位有效数字"""
        value = float(self)
        if value == 0:
            return "0"
        return format(value, f".{digits}g")

    def __str__(self) -> str:
        return self.to_exact_string()

    def __repr__(self) -> str:
        return f"FieldScalar({self.to_exact_string()!r})"


_VALUE_RE = re.compile(
    r"""^\s*
    (?P<p>[+-]?\d+(?:/\d+)?)?
    \s*
    (?:
        (?P<sign>[+-])?\s*
        (?:(?P<q>\d+(?:/\d+)?)\s*\*\s*)?
        sqrt\(\s*(?P<d>\d+)\s*\)
    )?
    \s*$""",
    re.VERBOSE,
)


ZERO = FieldScalar()
ONE = FieldScalar(Fraction(1))
