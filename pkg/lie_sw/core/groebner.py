"""Buchberger 算法"""

from typing import List, Optional, Sequence, Tuple

from loguru import logger

from .poly import Monomial, MultiPoly, PolyRing


class GroebnerBudgetExceeded(RuntimeError):
    """约化步数超出预算"""

    def __init__(self, budget: int, basis_size: int = 0):
        self.budget = budget
        self.basis_size = basis_size
        super().__init__(f"Gröbner 计算预算耗尽: {budget} 步约化 (当前基大小 {basis_size})")


class _Budget:
    """跨多次约化共享的步数计数器"""

    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.steps = 0

    def tick(self, basis_size: int = 0):
        self.steps += 1
        if self.limit is not None and self.steps > self.limit:
            raise GroebnerBudgetExceeded(self.limit, basis_size)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _common_ring(polys: Sequence[MultiPoly], order: Optional[str]) -> PolyRing:
    ring = polys[0].ring
    for p in polys[1:]:
        ring = ring.union(p.ring)
    return ring.with_order(order) if order else ring


def reduce(f: MultiPoly, basis: Sequence[MultiPoly], _budget: Optional[_Budget] = None) -> MultiPoly:
    """
    多元除法的余式(完全约化)

    Args:
        f: 被约化的多项式
        basis: 除式列表(需与 f 位于同一环)

    Returns:
        余式; 若 basis 是 Gröbner 基, 余式为零当且仅当 f 属于理想
    """
    basis = [g for g in basis if g]
    ring = _common_ring([f, *basis], None)
    f = f.in_ring(ring)
    basis = [g.in_ring(ring) for g in basis]
    divisors = [(g.leading_monomial(), g.leading_coefficient().inverse(), g) for g in basis]
    p = f
    remainder = {}
    while p:
        lm = p.leading_monomial()
        lc = p.terms[lm]
        for g_lm, g_inv, g in divisors:
            if _divides(g_lm, lm):
                if _budget is not None:
                    _budget.tick(len(divisors))
                p = p - g.mul_term(_quotient(lm, g_lm), lc * g_inv)
                break
        else:
            remainder[lm] = lc
            p = MultiPoly(p.ring, {m: c for m, c in p.terms.items() if m != lm})
    return MultiPoly(f.ring, remainder)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """S(f, g) = (L/LT(f))·f − (L/LT(g))·g, L = lcm(LM(f), LM(g))"""
    f_lm, g_lm = f.leading_monomial(), g.leading_monomial()
    lcm = _lcm(f_lm, g_lm)
    return (
        f.mul_term(_quotient(lcm, f_lm), f.leading_coefficient().inverse())
        - g.mul_term(_quotient(lcm, g_lm), g.leading_coefficient().inverse())
    )


def _interreduce(basis: List[MultiPoly]) -> List[MultiPoly]:
    """去掉首项可被其他元素整除的多项式, 再相互约化为约化 Gröbner 基"""
    minimal = []
    for i, g in enumerate(basis):
        lm = g.leading_monomial()
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            h_lm = h.leading_monomial()
            if _divides(h_lm, lm) and (h_lm != lm or j < i):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(reduce(g, others).monic())
    key = reduced[0].ring.key() if reduced else None
    return sorted(reduced, key=lambda p: key(p.leading_monomial()))


def buchberger(
    system: Sequence[MultiPoly],
    order: Optional[str] = "grevlex",
    budget: Optional[int] = 100000,
) -> List[MultiPoly]:
    """
    计算约化 Gröbner 基

    选择策略为 normal selection(最小 lcm 优先), 只使用第一判据(首项互素)。

    Args:
        system: 生成元列表(非空)
        order: 单项式序 lex / grlex / grevlex; None 表示沿用输入环的序
        budget: 允许的约化步数上限, None 表示不限

    Returns:
        首一、相互约化、按首项升序排列的 Gröbner 基

    Raises:
        GroebnerBudgetExceeded: 约化步数超出预算
    """
    if not system:
        raise ValueError("Gröbner 基的输入不能为空")
    ring = _common_ring(system, order)
    counter = _Budget(budget)
    key = ring.key()

    basis: List[MultiPoly] = []
    for p in system:
        p = p.in_ring(ring)
        if p:
            basis.append(p.monic())
    if not basis:
        return [ring.zero()]

    pairs: List[Tuple[int, int]] = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    logger.debug(f"Buchberger 开始: {len(basis)} 个生成元, {ring.nvars} 个变量, 单项式序 {ring.order}")

    while pairs:
        # normal selection
        pair = min(pairs, key=lambda ij: key(_lcm(basis[ij[0]].leading_monomial(), basis[ij[1]].leading_monomial())))
        pairs.remove(pair)
        f, g = basis[pair[0]], basis[pair[1]]
        f_lm, g_lm = f.leading_monomial(), g.leading_monomial()
        # 第一判据: 首项互素时 S 多项式必约化为零
        if all(not (x and y) for x, y in zip(f_lm, g_lm)):
            continue
        h = reduce(s_polynomial(f, g), basis, counter)
        if h:
            h = h.monic()
            pairs.extend((k, len(basis)) for k in range(len(basis)))
            basis.append(h)
            if h.is_constant():
                logger.debug("Buchberger: 理想包含常数, 基为 {1}")
                return [ring.one()]

    result = _interreduce(basis)
    logger.debug(f"Buchberger 完成: 基大小 {len(result)}, 约化步数 {counter.steps}")
    return result


def is_groebner_basis(basis: Sequence[MultiPoly]) -> bool:
    """检查所有 S 多项式都约化为零"""
    polys = [g for g in basis if g]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if reduce(s_polynomial(polys[i], polys[j]), polys):
                return False
    return True


def ideal_contains(basis: Sequence[MultiPoly], f: MultiPoly) -> bool:
    """理想成员判定(basis 需为 Gröbner 基)"""
    ring = basis[0].ring
    return not reduce(f.in_ring(ring), basis)


__all__ = [
    "GroebnerBudgetExceeded",
    "buchberger",
    "reduce",
    "s_polynomial",
    "is_groebner_basis",
    "ideal_contains",
]
