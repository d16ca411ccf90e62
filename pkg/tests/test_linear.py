import random

import pytest

from lie_sw.core.linear import reduce_linear, reduces_to_zero_linearly
from lie_sw.core.poly import NonlinearInputError, PolyRing


@pytest.fixture
def ring():
    return PolyRing(("a", "b", "c", "p", "q", "r1", "r2"))


def test_assumption_factor_is_invertible(ring):
    a, b, c, p = (ring.var(v) for v in "abcp")
    result = reduce_linear([p * a, a + b, b - c], ["a", "b", "c"], [p])
    assert result.forced_zero == ["a", "b", "c"]
    assert result.rank == 3
    assert result.relations == []
    assert result.conditions == []


def test_relation_and_condition(ring):
    a, b, c, q = (ring.var(v) for v in "abcq")
    result = reduce_linear([a + b, q * c], ["a", "b", "c"], [])
    assert result.rank == 1
    assert result.forced_zero == []
    assert result.relations == [a + b]
    assert result.conditions == [q * c]
    assert result.implies(2 * a + 2 * b)
    assert not result.implies(a)


def test_difference_factor(ring):
    a, b = ring.var("a"), ring.var("b")
    factor = ring.var("r1") - ring.var("r2")
    result = reduce_linear([factor * a, factor * (a - b)], ["a", "b"], [factor])
    assert result.forced_zero == ["a", "b"]


def test_nonlinear_rejected(ring):
    a, b = ring.var("a"), ring.var("b")
    with pytest.raises(NonlinearInputError):
        reduce_linear([a * b], ["a", "b"])


def test_empty_system():
    assert reduce_linear([], ["a"]).rank == 0


def test_reduces_to_zero_linearly(ring):
    a, b, c = (ring.var(v) for v in "abc")
    generators = [a + b, b + c]
    assert reduces_to_zero_linearly(a - c, generators, ["a", "b", "c"])
    assert not reduces_to_zero_linearly(a + c, generators, ["a", "b", "c"])


_COEFFS = ("0", "1", "-1", "2", "p", "-p", "2*p", "q", "p*q", "1+q")


def _coefficient(ring, text):
    p, q = ring.var("p"), ring.var("q")
    return {
        "0": ring.zero(), "1": ring.one(), "-1": -ring.one(), "2": ring.constant(2),
        "p": p, "-p": -p, "2*p": 2 * p, "q": q, "p*q": p * q, "1+q": q + 1,
    }[text]


@pytest.mark.parametrize("seed", range(10))
def test_reduction_keeps_solution_set(seed):
    ring = PolyRing(("a", "b", "c", "d", "p", "q"))
    unknowns = ["a", "b", "c", "d"]
    rng = random.Random(seed)
    system = [
        sum((_coefficient(ring, rng.choice(_COEFFS)) * ring.var(v) for v in unknowns), ring.zero())
        for _ in range(3)
    ]
    result = reduce_linear(system, unknowns, [ring.var("p")])
    reduced = [ring.var(v) for v in result.forced_zero] + result.relations + result.conditions

    points = [{"a": 0, "b": 0, "c": 0, "d": 0, "p": 1, "q": 0}]
    for _ in range(100):
        point = {v: rng.choice((-1, 0, 1)) for v in unknowns}
        # 假设 p ≠ 0
        point["p"] = rng.choice((-2, -1, 1, 2))
        point["q"] = rng.choice((-1, 0, 1))
        points.append(point)

    for point in points:
        before = all(not f.evaluate(point) for f in system)
        after = all(not g.evaluate(point) for g in reduced)
        assert before == after, point
