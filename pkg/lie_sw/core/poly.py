"""Q(√d) 系数的多元多项式与单变量辅助函数"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .field import FieldScalar, Number, ZERO, ONE

Monomial = Tuple[int, ...]

MONOMIAL_ORDERS = ("lex", "grlex", "grevlex")


class NonlinearInputError(ValueError):
    """多项式在指定变量上不是一次的"""
    pass


def _order_key(order: str) -> Callable[[Monomial], tuple]:
    if order == "lex":
        return lambda m: m
    if order == "grlex":
        return lambda m: (sum(m), m)
    if order == "grevlex":
        return lambda m: (sum(m), tuple(-e for e in reversed(m)))
    raise ValueError(f"未知的单项式序: {order}")


@dataclass(frozen=True)
class PolyRing:
    """
    多项式环 Q(√d)[x1, ..., xn]

    变量顺序即单项式序中的变量优先级(靠前者更大)。
    """

    variables: Tuple[str, ...]
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"变量名重复: {self.variables}")
        _order_key(self.order)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"变量 {name} 不在环中") from None

    def key(self) -> Callable[[Monomial], tuple]:
        return _order_key(self.order)

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.variables, order)

    def union(self, other: "PolyRing") -> "PolyRing":
        """合并两个环的变量(保留 self 的顺序, 追加 other 的新变量)"""
        if other.variables == self.variables:
            return self
        extra = tuple(v for v in other.variables if v not in self.variables)
        return PolyRing(self.variables + extra, self.order)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.constant(ONE)

    def constant(self, value: Number) -> "MultiPoly":
        c = FieldScalar.of(value)
        if not c:
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "MultiPoly":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return MultiPoly(self, {tuple(exps): ONE})

    def gens(self) -> List["MultiPoly"]:
        return [self.var(v) for v in self.variables]


class MultiPoly:
    """
    稀疏多元多项式

    terms: 单项式指数元组 → 非零系数。不存储零系数。
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, FieldScalar]):
        self.ring = ring
        self.terms: Dict[Monomial, FieldScalar] = {m: c for m, c in terms.items() if c}

    # ============ 构造 ============

    @classmethod
    def from_univariate(cls, coeffs: Sequence[Number], variable: str = "x") -> "MultiPoly":
        """升幂系数列表 → 单变量多项式"""
        ring = PolyRing((variable,))
        return cls(ring, {(k,): FieldScalar.of(c) for k, c in enumerate(coeffs)})

    def to_univariate(self, variable: Optional[str] = None) -> List[FieldScalar]:
        """单变量多项式 → 升幂系数列表"""
        used = self.variables_used()
        if len(used) > 1:
            raise ValueError(f"不是单变量多项式: {used}")
        name = variable or (used[0] if used else self.ring.variables[0])
        idx = self.ring.index(name)
        deg = self.degree(name)
        coeffs = [ZERO] * (deg + 1)
        for m, c in self.terms.items():
            coeffs[m[idx]] = c
        return coeffs

    def in_ring(self, ring: PolyRing) -> "MultiPoly":
        """把多项式嵌入到包含其变量的另一个环"""
        missing = [v for v in self.variables_used() if v not in ring.variables]
        if missing:
            raise KeyError(f"目标环缺少变量: {missing}")
        mapping = {v: ring.index(v) for v in self.ring.variables if v in ring.variables}
        new_terms = {}
        for m, c in self.terms.items():
            exps = [0] * ring.nvars
            for name, e in zip(self.ring.variables, m):
                if e:
                    exps[mapping[name]] = e
            new_terms[tuple(exps)] = c
        return MultiPoly(ring, new_terms)

    def _coerce(self, other) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, FieldScalar)):
            return self.ring.constant(other)
        return None

    def _align(self, other: "MultiPoly") -> Tuple["MultiPoly", "MultiPoly"]:
        if other.ring == self.ring:
            return self, other
        ring = self.ring.union(other.ring)
        return self.in_ring(ring), other.in_ring(ring)

    # ============ 基本属性 ============

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> FieldScalar:
        """常数项; 非常数多项式调用时报错"""
        if not self.is_constant():
            raise ValueError(f"不是常数: {self}")
        return next(iter(self.terms.values()), ZERO)

    def variables_used(self) -> List[str]:
        used = set()
        for m in self.terms:
            for name, e in zip(self.ring.variables, m):
                if e:
                    used.add(name)
        return [v for v in self.ring.variables if v in used]

    def degree(self, name: Optional[str] = None) -> int:
        """总次数, 或指定变量的次数; 零多项式为 -1"""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(m) for m in self.terms)
        idx = self.ring.index(name)
        return max(m[idx] for m in self.terms)

    def sorted_terms(self) -> List[Tuple[Monomial, FieldScalar]]:
        """按当前单项式序从大到小排列"""
        key = self.ring.key()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("零多项式没有首项")
        return max(self.terms, key=self.ring.key())

    def leading_coefficient(self) -> FieldScalar:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        inv = self.leading_coefficient().inverse()
        return MultiPoly(self.ring, {m: c * inv for m, c in self.terms.items()})

    # ============ 算术 ============

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        terms = dict(a.terms)
        for m, c in b.terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return MultiPoly(a.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c: Number) -> "MultiPoly":
        c = FieldScalar.of(c)
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, monomial: Monomial, coeff: FieldScalar) -> "MultiPoly":
        """乘以单项式 coeff·x^monomial"""
        return MultiPoly(
            self.ring,
            {tuple(a + b for a, b in zip(m, monomial)): c * coeff for m, c in self.terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldScalar)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        terms: Dict[Monomial, FieldScalar] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                terms[m] = terms.get(m, ZERO) + c1 * c2
        return MultiPoly(a.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self) -> int:
        return hash(frozenset((tuple(zip(self.ring.variables, m)), c) for m, c in self.terms.items()))

    # ============ 代入与求值 ============

    def substitute(self, values: Mapping[str, Union[Number, "MultiPoly"]]) -> "MultiPoly":
        """
        部分代入: 变量 → 数值或多项式

        结果仍位于(合并后的)环中, 被代入的变量次数归零。
        """
        ring = self.ring
        for v in values.values():
            if isinstance(v, MultiPoly):
                ring = ring.union(v.ring)
        result = ring.zero()
        idx = {name: k for k, name in enumerate(self.ring.variables) if name in values}
        cache: Dict[Tuple[str, int], MultiPoly] = {}
        for m, c in self.terms.items():
            rest = [0] * ring.nvars
            term = ring.constant(c)
            for k, (name, e) in enumerate(zip(self.ring.variables, m)):
                if not e:
                    continue
                if name in idx:
                    key = (name, e)
                    if key not in cache:
                        value = values[name]
                        base = value.in_ring(ring) if isinstance(value, MultiPoly) else ring.constant(value)
                        cache[key] = base ** e
                    term = term * cache[key]
                else:
                    rest[ring.index(name)] = e
            result = result + term.mul_term(tuple(rest), ONE)
        return result

    def evaluate(self, values: Mapping[str, Number]) -> FieldScalar:
        """完全求值; 缺少变量时报错"""
        missing = [v for v in self.variables_used() if v not in values]
        if missing:
            raise KeyError(f"缺少变量取值: {missing}")
        total = ZERO
        for m, c in self.terms.items():
            term = c
            for name, e in zip(self.ring.variables, m):
                if e:
                    term = term * FieldScalar.of(values[name]) ** e
            total = total + term
        return total

    def linear_form(self, variables: Sequence[str]) -> Tuple[Dict[str, "MultiPoly"], "MultiPoly"]:
        """
        把多项式拆成 Σ coeff_v · v + rest, 其中 coeff_v 与 rest 不含指定变量

        Raises:
            NonlinearInputError: 某一项在指定变量上的次数 > 1
        """
        targets = {self.ring.index(v): v for v in variables if v in self.ring.variables}
        coeffs: Dict[str, Dict[Monomial, FieldScalar]] = {}
        rest: Dict[Monomial, FieldScalar] = {}
        for m, c in self.terms.items():
            hits = [(k, m[k]) for k in targets if m[k]]
            if not hits:
                rest[m] = c
                continue
            if len(hits) > 1 or hits[0][1] > 1:
                term = MultiPoly(self.ring, {m: c})
                raise NonlinearInputError(f"非线性项: {term}")
            k = hits[0][0]
            reduced = list(m)
            reduced[k] = 0
            coeffs.setdefault(targets[k], {})[tuple(reduced)] = c
        return (
            {v: MultiPoly(self.ring, t) for v, t in coeffs.items()},
            MultiPoly(self.ring, rest),
        )

    # ============ 格式化 ============

    def _monomial_str(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.ring.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}**{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = self._monomial_str(m)
            negative = c.sign() < 0 if c.is_rational else False
            coeff = -c if negative else c
            if not mono:
                body = coeff.to_exact_string()
            elif coeff == 1:
                body = mono
            elif coeff.is_rational:
                body = f"{coeff.to_exact_string()}*{mono}"
            else:
                body = f"({coeff.to_exact_string()})*{mono}"
            if not out:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


# ============ 单变量多项式(升幂系数列表) ============

UPoly = List[FieldScalar]


def upoly_trim(p: Sequence[Number]) -> UPoly:
    out = [FieldScalar.of(c) for c in p]
    while out and not out[-1]:
        out.pop()
    return out


def upoly_degree(p: Sequence[FieldScalar]) -> int:
    return len(upoly_trim(p)) - 1


def upoly_add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return upoly_trim([(p[k] if k < len(p) else ZERO) + (q[k] if k < len(q) else ZERO) for k in range(n)])


def upoly_mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
    return upoly_trim(out)


def upoly_divmod(p: UPoly, q: UPoly) -> Tuple[UPoly, UPoly]:
    """带余除法 p = quotient·q + remainder"""
    q = upoly_trim(q)
    if not q:
        raise ZeroDivisionError("除以零多项式")
    rem = upoly_trim(p)
    quot = [ZERO] * max(len(rem) - len(q) + 1, 1)
    lead_inv = q[-1].inverse()
    while len(rem) >= len(q):
        shift = len(rem) - len(q)
        factor = rem[-1] * lead_inv
        quot[shift] = factor
        for k, c in enumerate(q):
            rem[k + shift] = rem[k + shift] - factor * c
        rem = upoly_trim(rem[:-1])
    return upoly_trim(quot), rem


def upoly_monic(p: UPoly) -> UPoly:
    p = upoly_trim(p)
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def upoly_gcd(p: UPoly, q: UPoly) -> UPoly:
    """首一最大公因式"""
    a, b = upoly_trim(p), upoly_trim(q)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    return upoly_monic(a)


def upoly_derivative(p: UPoly) -> UPoly:
    return upoly_trim([c * k for k, c in enumerate(p)][1:])


def upoly_eval(p: Sequence[FieldScalar], x: Number) -> FieldScalar:
    acc = ZERO
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def square_free_decomposition(p: UPoly) -> List[Tuple[UPoly, int]]:
    """
    Yun 无平方分解(特征 0)

    Returns:
        [(首一因式 a_i, 重数 i)], 满足 p = lc · Π a_i^i, 只返回非常数因式
    """
    f = upoly_monic(p)
    if len(f) <= 1:
        return []
    df = upoly_derivative(f)
    a = upoly_gcd(f, df)
    b = upoly_divmod(f, a)[0]
    c = upoly_divmod(df, a)[0]
    d = upoly_add(c, [-v for v in upoly_derivative(b)])
    factors = []
    i = 1
    while len(b) > 1:
        a = upoly_gcd(b, d)
        if len(a) > 1:
            factors.append((a, i))
        b = upoly_divmod(b, a)[0]
        c = upoly_divmod(d, a)[0]
        d = upoly_add(c, [-v for v in upoly_derivative(b)])
        i += 1
    return factors


def sturm_sequence(p: UPoly) -> List[UPoly]:
    seq = [upoly_trim(p), upoly_derivative(p)]
    while seq[-1]:
        rem = upoly_divmod(seq[-2], seq[-1])[1]
        seq.append([-c for c in rem])
    return [s for s in seq if s]


def count_real_roots(p: UPoly) -> int:
    """无平方多项式在 ℝ 上的不同实根个数(Sturm 定理, 区间 (-∞, +∞))"""
    seq = sturm_sequence(p)

    def variations(signs: Iterable[int]) -> int:
        signs = [s for s in signs if s]
        return sum(1 for x, y in zip(signs, signs[1:]) if x != y)

    at_pos = [s[-1].sign() for s in seq]
    at_neg = [s[-1].sign() * (-1) ** (len(s) - 1) for s in seq]
    return variations(at_neg) - variations(at_pos)
