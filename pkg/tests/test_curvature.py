from fractions import Fraction

import pytest

from lie_sw.core.field import FieldScalar
from lie_sw.core.matrix import DimensionMismatchError, Matrix
from lie_sw.services.classification import MetricVariant
from lie_sw.services.constraints import family_algebra, family_metric
from lie_sw.services.curvature import (
    DegenerateMetricError,
    Metric,
    compute_curvature,
    first_bianchi_holds,
    has_curvature_symmetries,
    identity_check,
    is_metric_compatible,
    is_torsion_free,
    is_trace_free,
    is_zero_tensor,
    kulkarni_nomizu,
    tensor_equal,
)
from lie_sw.services.lie_algebra import LieAlgebra

from .corpus import SIGNATURES, filiform_points

HALF = Fraction(1, 2)


def test_metric_validation():
    with pytest.raises(DegenerateMetricError):
        Metric.diag([1, 1, 0, 1])
    with pytest.raises(DimensionMismatchError):
        Metric(Matrix([[1, 1], [0, 1]]))
    null_plane = Metric(Matrix.block_diag(Matrix.identity(2), Matrix([[0, 1], [1, 0]])))
    assert null_plane.signature == (3, 1)
    assert null_plane.is_lorentzian
    assert Metric.diag(SIGNATURES["neutral"]).is_neutral


def test_heisenberg_riemannian(heisenberg):
    report = compute_curvature(heisenberg, Metric.identity(4))
    assert report.Gamma[0, 1, 2] == HALF
    assert report.Gamma[1, 0, 2] == -HALF
    assert report.ricci_matrix == Matrix.diag([-HALF, -HALF, HALF, 0])
    assert report.scalar == -HALF
    assert report.SW[1, 2, 0] == Fraction(-1, 4)
    assert not report.sw_zero
    assert not report.codazzi_holds
    assert report.identity_holds
    assert not report.ricci_parallel
    assert not report.locally_symmetric


def test_heisenberg_sectional_curvature(heisenberg):
    report = compute_curvature(heisenberg, Metric.identity(4))
    e = [[1 if i == k else 0 for i in range(4)] for k in range(4)]
    assert report.sectional_curvature(e[0], e[1]) == Fraction(-3, 4)
    assert report.sectional_curvature(e[0], e[2]) == Fraction(1, 4)
    assert report.sectional_curvature(e[0], e[3]) == 0
    with pytest.raises(ValueError):
        report.sectional_curvature(e[0], e[0])


@pytest.mark.parametrize("signs", [(1, 1, 1, 1), (1, 1, 1, -1), (-1, -1, -1, 1)])
def test_round_factor(su2_r, signs):
    # su(2) 部分保持双不变
    report = compute_curvature(su2_r, Metric.diag(signs))
    assert report.ricci_matrix == Matrix.diag([HALF, HALF, HALF, 0])
    assert report.sw_zero
    assert report.ricci_parallel
    assert report.locally_symmetric
    assert report.conformally_flat
    assert report.identity_holds


def test_round_factor_sectional(su2_r):
    report = compute_curvature(su2_r, Metric.identity(4))
    assert report.sectional_curvature([1, 0, 0, 0], [0, 1, 0, 0]) == Fraction(1, 4)


def test_abelian_is_flat(diagonal_metric):
    report = compute_curvature(LieAlgebra.abelian(), diagonal_metric)
    for tensor in (report.Gamma, report.R, report.ricci, report.W, report.SW, report.divW, report.nabla_r):
        assert is_zero_tensor(tensor)
    assert report.scalar == 0


@pytest.mark.parametrize("constants", filiform_points(20))
@pytest.mark.parametrize("signature", ["riemannian", "lorentzian"])
def test_filiform_identities(constants, signature):
    algebra = LieAlgebra(4, constants)
    report = compute_curvature(algebra, Metric.diag(SIGNATURES[signature]))
    assert is_torsion_free(report.connection, algebra)
    assert is_metric_compatible(report.connection)
    assert has_curvature_symmetries(report.R)
    assert first_bianchi_holds(report.R)
    assert is_trace_free(report.W, report.metric)
    assert tensor_equal(report.R, report.W + kulkarni_nomizu(report.A, report.metric))
    assert report.identity_holds
    assert report.sw_zero == report.codazzi_holds


@pytest.mark.parametrize("a", [1, Fraction(1, 2), -2, FieldScalar.sqrt_of(3)])
@pytest.mark.parametrize("eps3", [1, -1])
@pytest.mark.parametrize("variant", list(MetricVariant))
def test_family_identities(a, eps3, variant):
    algebra = family_algebra(a, 1, 1, eps3)
    report = compute_curvature(algebra, family_metric(1, 1, eps3, variant))
    assert is_metric_compatible(report.connection)
    assert is_torsion_free(report.connection, algebra)
    assert has_curvature_symmetries(report.R)
    assert first_bianchi_holds(report.R)
    assert is_trace_free(report.W, report.metric)
    assert tensor_equal(report.R, report.W + kulkarni_nomizu(report.A, report.metric))
    assert report.identity_holds
    assert report.sw_zero == report.codazzi_holds
    if variant == MetricVariant.SIGN_FLIPPED:
        assert report.sw_zero
        assert is_zero_tensor(report.divW)
        assert not report.ricci_parallel


def test_identity_requires_dimension_four():
    algebra = LieAlgebra(3, {(1, 2, 3): 1})
    report = compute_curvature(algebra, Metric.identity(3))
    with pytest.raises(DimensionMismatchError):
        identity_check(report.SW, report.divW, 3)
