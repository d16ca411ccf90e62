"""带非零假设的线性约化"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from .poly import MultiPoly, NonlinearInputError


@dataclass
class LinearReduction:
    """
    线性约化结果

    Attributes:
        forced_zero: 被迫为零的变量
        relations: 剩余的独立线性关系(已化简)
        rank: 主元个数
        conditions: 无法在假设下选主元的剩余行(其消失依赖于参数取值)
    """

    forced_zero: List[str] = field(default_factory=list)
    relations: List[MultiPoly] = field(default_factory=list)
    rank: int = 0
    conditions: List[MultiPoly] = field(default_factory=list)
    pivots: List[Tuple[str, "Row"]] = field(default_factory=list, repr=False)
    variables: List[str] = field(default_factory=list, repr=False)
    assumptions: List[MultiPoly] = field(default_factory=list, repr=False)

    def residual(self, f: MultiPoly) -> MultiPoly:
        """
        用主元行消去 f 中的主元变量, 返回剩余部分(已去掉假设因子并首一化)

        余式为零说明 f = 0 是约化结果的推论。
        """
        if not self.pivots or not f:
            return f
        ring = next(iter(self.pivots[0][1].values())).ring.union(f.ring)
        coeffs, rest = f.in_ring(ring).linear_form(self.variables)
        row: Row = dict(coeffs)
        if rest:
            row[_CONST] = rest
        for var, pivot_row in self.pivots:
            if var not in row:
                continue
            factor, pivot_coeff = row[var], pivot_row[var]
            keys = set(row) | set(pivot_row)
            row = {
                k: row.get(k, ring.zero()) * pivot_coeff - pivot_row.get(k, ring.zero()) * factor
                for k in keys
            }
            row = _normalize(row, self.variables, self.assumptions)
        var_polys = {v: ring.var(v) for v in self.variables if v in ring.variables}
        return _row_to_poly(row, ring, var_polys)

    def implies(self, f: MultiPoly) -> bool:
        return not self.residual(f)


def _exact_quotient(f: MultiPoly, h: MultiPoly) -> Optional[MultiPoly]:
    """若 h 整除 f 返回商, 否则返回None(单个除式的除法余式为零当且仅当整除)"""
    if not f:
        return f
    ring = f.ring.union(h.ring)
    f, h = f.in_ring(ring), h.in_ring(ring)
    quotient = ring.zero()
    p = f
    h_lm, h_inv = h.leading_monomial(), h.leading_coefficient().inverse()
    while p:
        lm = p.leading_monomial()
        if not all(x >= y for x, y in zip(lm, h_lm)):
            return None
        step = tuple(x - y for x, y in zip(lm, h_lm))
        coeff = p.terms[lm] * h_inv
        quotient = quotient + ring.one().mul_term(step, coeff)
        p = p - h.mul_term(step, coeff)
    return quotient


def _strip_assumptions(c: MultiPoly, assumptions: Sequence[MultiPoly]) -> MultiPoly:
    """反复除去假设因子"""
    changed = True
    while changed and c and not c.is_constant():
        changed = False
        for a in assumptions:
            q = _exact_quotient(c, a)
            if q is not None:
                c, changed = q, True
                break
    return c


def _invertible(c: MultiPoly, assumptions: Sequence[MultiPoly]) -> bool:
    """在假设下 c 是否必然非零: 非零常数乘以假设因子的幂积"""
    if not c:
        return False
    stripped = _strip_assumptions(c, assumptions)
    return stripped.is_constant()


Row = Dict[str, MultiPoly]

_CONST = "__const__"


def _normalize(row: Row, order: Sequence[str], assumptions: Sequence[MultiPoly]) -> Row:
    """去掉所有系数共有的假设因子, 并使首个非零系数的首项系数为 1"""
    row = {k: v for k, v in row.items() if v}
    if not row:
        return row
    for a in assumptions:
        while True:
            quotients = {k: _exact_quotient(v, a) for k, v in row.items()}
            if any(q is None for q in quotients.values()):
                break
            row = quotients
    first = next(k for k in [*order, _CONST] if k in row)
    inv = row[first].leading_coefficient().inverse()
    return {k: v.scale(inv) for k, v in row.items()}


def _row_to_poly(row: Row, ring, variables: Dict[str, MultiPoly]) -> MultiPoly:
    total = ring.zero()
    for k, coeff in row.items():
        total = total + (coeff if k == _CONST else coeff * variables[k])
    return total


def reduce_linear(
    system: Sequence[MultiPoly],
    variables: Sequence[str],
    assumptions: Sequence[MultiPoly] = (),
) -> LinearReduction:
    """
    对在指定变量上线性的方程组做无分数 Gauss-Jordan 消元

    系数可以含参数; 只有在假设下必然可逆的系数(非零常数乘以假设因子之积)
    才会被选作主元。

    Args:
        system: 方程列表(每个多项式 = 0)
        variables: 线性变量, 列顺序即主元优先顺序
        assumptions: 假设非零的因子, 例如 rho1 - rho2

    Returns:
        LinearReduction

    Raises:
        NonlinearInputError: 某个方程在指定变量上不是一次的
    """
    if not system:
        return LinearReduction()

    ring = system[0].ring
    for p in system[1:]:
        ring = ring.union(p.ring)
    for a in assumptions:
        ring = ring.union(a.ring)
    var_polys = {v: ring.var(v) for v in variables if v in ring.variables}
    order = [v for v in variables if v in var_polys]
    assumptions = [a.in_ring(ring) for a in assumptions]

    rows: List[Row] = []
    for eq in system:
        coeffs, rest = eq.in_ring(ring).linear_form(order)
        bad = [v for v in rest.variables_used() if v in var_polys]
        if bad:
            raise NonlinearInputError(f"方程含有非线性变量: {bad}")
        row = dict(coeffs)
        if rest:
            row[_CONST] = rest
        row = _normalize(row, order, assumptions)
        if row:
            rows.append(row)

    pivots: List[Tuple[str, Row]] = []
    pending = rows
    progress = True
    while progress:
        progress = False
        for idx, row in enumerate(pending):
            var = next((v for v in order if v in row and _invertible(row[v], assumptions)), None)
            if var is None:
                continue
            pivot_coeff = row[var]
            others = pending[:idx] + pending[idx + 1:]

            def eliminate(target: Row) -> Row:
                if var not in target:
                    return target
                factor = target[var]
                keys = set(target) | set(row)
                combined = {
                    k: target.get(k, ring.zero()) * pivot_coeff - row.get(k, ring.zero()) * factor
                    for k in keys
                }
                return _normalize(combined, order, assumptions)

            pending = [r for r in (eliminate(o) for o in others) if r]
            pivots = [(v, eliminate(r)) for v, r in pivots]
            pivots.append((var, row))
            progress = True
            break

    forced_zero = []
    relations = []
    for var, row in pivots:
        if set(row) == {var}:
            forced_zero.append(var)
        else:
            relations.append(_row_to_poly(row, ring, var_polys))

    conditions = [_row_to_poly(r, ring, var_polys) for r in pending]
    forced_zero.sort(key=order.index)
    logger.debug(
        f"线性约化: {len(system)} 个方程, 秩 {len(pivots)}, "
        f"{len(forced_zero)} 个变量被迫为零, {len(relations)} 条关系, {len(conditions)} 条条件"
    )
    return LinearReduction(
        forced_zero=forced_zero,
        relations=relations,
        rank=len(pivots),
        conditions=conditions,
        pivots=pivots,
        variables=order,
        assumptions=assumptions,
    )


def reduces_to_zero_linearly(
    target: MultiPoly,
    generators: Sequence[MultiPoly],
    variables: Sequence[str],
    assumptions: Sequence[MultiPoly] = (),
) -> bool:
    """target 是否位于 generators 的线性张成中(系数允许含参数, 以假设为分母)"""
    base = reduce_linear(generators, variables, assumptions)
    extended = reduce_linear([*generators, target], variables, assumptions)
    return base.rank + len(base.conditions) == extended.rank + len(extended.conditions)


__all__ = ["LinearReduction", "reduce_linear", "reduces_to_zero_linearly"]
