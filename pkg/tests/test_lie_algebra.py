import random

import pytest

from lie_sw.core.field import ZERO
from lie_sw.core.matrix import DimensionMismatchError
from lie_sw.core.poly import PolyRing
from lie_sw.services.lie_algebra import (
    JacobiViolationError,
    LieAlgebra,
    basis_vector,
    jacobi_polynomials,
    structure_constant_name,
    structure_constant_names,
)

from .corpus import filiform_points, random_rational


def test_names():
    assert structure_constant_name(1, 2, 3) == "C_1_2^3"
    names = structure_constant_names(4)
    assert len(names) == 24
    assert names[0] == "C_1_2^1"
    assert names[-1] == "C_3_4^4"


def test_antisymmetry(heisenberg):
    assert heisenberg.C(0, 1, 2) == 1
    assert heisenberg.C(1, 0, 2) == -1
    assert heisenberg.constants() == {(1, 2, 3): 1}
    e1, e2 = basis_vector(0), basis_vector(1)
    assert heisenberg.bracket(e1, e2) == [0, 0, 1, 0]
    assert heisenberg.bracket(e2, e1) == [0, 0, -1, 0]


def test_valid_algebras(heisenberg, su2_r):
    assert heisenberg.jacobi_check().ok
    assert su2_r.require_valid() is su2_r
    assert su2_r.is_unimodular()
    assert LieAlgebra.abelian().jacobi_check().ok


@pytest.mark.parametrize("constants", filiform_points(5))
def test_filiform_is_valid(constants):
    assert LieAlgebra(4, constants).jacobi_check().ok


def test_jacobi_violation_reports_every_triple():
    # [e1, e2] = e3, [e1, e3] = e1
    algebra = LieAlgebra(4, {(1, 2, 3): 1, (1, 3, 1): 1})
    result = algebra.jacobi_check()
    assert not result.ok
    first = result.violations[0]
    assert (first.i, first.j, first.k) == (1, 2, 3)
    assert first.residual == [0, 0, -1, 0]
    assert first.describe() == "(1,2,3) → -1·e3"
    with pytest.raises(JacobiViolationError) as info:
        algebra.require_valid()
    assert info.value.violations == result.violations


def test_index_validation():
    with pytest.raises(DimensionMismatchError):
        LieAlgebra(4, {(2, 1, 3): 1})
    with pytest.raises(DimensionMismatchError):
        LieAlgebra(4, {(1, 2, 5): 1})
    with pytest.raises(DimensionMismatchError):
        LieAlgebra(2, {})


def test_symbolic_jacobi_vanishes_at_valid_point(su2_r):
    ring = PolyRing(tuple(structure_constant_names(4)))
    polys = jacobi_polynomials(ring)
    assert len(polys) == 16
    assignment = su2_r.assignment()
    assert all(not p.substitute(assignment) for p in polys)

    broken = LieAlgebra(4, {(1, 2, 3): 1, (1, 3, 1): 1}).assignment()
    assert any(p.substitute(broken) for p in polys)


def test_symbolic_substitute(heisenberg):
    ring = PolyRing(tuple(structure_constant_names(4)))
    symbolic = LieAlgebra.symbolic(ring)
    assert symbolic.is_symbolic
    concrete = symbolic.substitute(heisenberg.assignment())
    assert concrete.constants() == heisenberg.constants()


def _random_vector(rng):
    return [random_rational(rng) for _ in range(4)]


def _combine(a, x, b, y):
    return [a * u + b * v for u, v in zip(x, y)]


@pytest.mark.parametrize("constants", filiform_points(5))
def test_bracket_is_bilinear_and_antisymmetric(constants):
    algebra = LieAlgebra(4, constants)
    rng = random.Random(11)
    for _ in range(20):
        x, y, z = (_random_vector(rng) for _ in range(3))
        a, b = random_rational(rng), random_rational(rng)
        assert algebra.bracket(_combine(a, x, b, y), z) == _combine(a, algebra.bracket(x, z), b, algebra.bracket(y, z))
        assert algebra.bracket(z, _combine(a, x, b, y)) == _combine(a, algebra.bracket(z, x), b, algebra.bracket(z, y))
        assert algebra.bracket(x, y) == [-v for v in algebra.bracket(y, x)]
        assert all(not v for v in algebra.bracket(x, x))


@pytest.mark.parametrize("constants", filiform_points(5))
def test_filiform_jacobi_on_random_elements(constants):
    algebra = LieAlgebra(4, constants)
    rng = random.Random(12)
    for _ in range(50):
        x, y, z = (_random_vector(rng) for _ in range(3))
        total = [ZERO] * 4
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            total = [s + t for s, t in zip(total, algebra.bracket(u, algebra.bracket(v, w)))]
        assert all(not t for t in total)
