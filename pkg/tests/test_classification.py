from fractions import Fraction
import random

import pytest

from lie_sw.core.field import FieldScalar
from lie_sw.core.matrix import Matrix
from lie_sw.services.classification import (
    NEUTRAL_ONLY,
    SEGRE_CATALOG,
    SUPPORTED_PAIRS,
    SW_NONTRIVIAL_TYPES,
    MetricVariant,
    SegreIndeterminateError,
    SegreType,
    UnsupportedSegreTypeError,
    canonical_pair,
    check_signature_admissible,
    is_einstein,
    predicates,
    ricci_eigendata,
    ricci_operator,
    segre_catalog,
    segre_consistent,
    segre_type,
    sign_cases,
    verify_canonical_pair,
)
from lie_sw.services.curvature import Metric, compute_curvature
from lie_sw.services.lie_algebra import LieAlgebra

from .corpus import corpus_members


def test_catalog():
    entries = segre_catalog()
    assert len(entries) == 20
    rendered = [e.segre.render() for e in entries]
    assert rendered == list(SEGRE_CATALOG)
    assert len(set(rendered)) == 20
    assert all(e.segre.total_size == 4 for e in entries)
    assert {e.segre.render() for e in entries if e.neutral_only} == set(NEUTRAL_ONLY)
    assert set(SW_NONTRIVIAL_TYPES) <= set(SEGRE_CATALOG)


@pytest.mark.parametrize("text", SEGRE_CATALOG)
def test_parse_render_is_canonical(text):
    assert SegreType.parse(text).render() == text


def test_parse_normalises_order():
    assert SegreType.parse("{(12)1}").render() == "{1(12)}"
    assert SegreType.parse("{11~11}").render() == "{1111~}"
    assert "\u0304" in SegreType.parse("{1111~}").human()


@pytest.mark.parametrize("text", ["1111", "{(1}", "{(1)}", "{(11~1)}", "{}", "{x}"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        SegreType.parse(text)


def test_segre_of_diagonal_and_jordan():
    assert segre_type(Matrix.diag([1, 2, 3, 4])).render() == "{1111}"
    assert segre_type(Matrix.diag([1, 1, 2, 2])).render() == "{(11)(11)}"
    assert segre_type(Matrix.zeros(4)).render() == "{(1111)}"
    jordan = Matrix([[5, 0, 0, 0], [0, 5, 0, 0], [0, 0, 5, 0], [0, 0, 1, 5]])
    assert segre_type(jordan).render() == "{(112)}"
    nilpotent3 = Matrix([[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 7]])
    assert segre_type(nilpotent3).render() == "{13}"


def test_complex_pair_exact():
    r3 = FieldScalar.sqrt_of(3)
    rho = Matrix([[0, 0, 0, 0], [0, -8, 0, 0], [0, 0, 4, 4 * r3], [0, 0, -4 * r3, 4]])
    assert rho.char_poly_coeffs() == [0, 512, 0, 0, 1]
    assert segre_type(rho).render() == "{1111~}"
    data = ricci_eigendata(rho)
    assert data.real_values() == [-8, 0]
    assert len(data.complex_pairs) == 1
    pair = data.complex_pairs[0]
    assert pair.alpha == 4
    assert pair.beta == 4 * r3


def test_irrational_real_eigenvalues():
    # x² − 2 在 Q 上不可约: 两个无理实根
    rho = Matrix.block_diag(Matrix([[0, 2], [1, 0]]), Matrix.diag([3, 5]))
    assert segre_type(rho).render() == "{1111}"
    data = ricci_eigendata(rho)
    assert len(data.real) == 4
    assert sorted(e.exact is None for e in data.real) == [False, False, True, True]


def test_close_eigenvalues_are_indeterminate():
    # x² − 2x + 1 − 2·10⁻²⁴: 两个无理根 1 ± √2·10⁻¹², 只有数值近似
    block = Matrix([[1, 1], [Fraction(2, 10 ** 24), 1]])
    rho = Matrix.block_diag(block, Matrix.diag([3, 5]))
    with pytest.raises(SegreIndeterminateError):
        segre_type(rho, tolerance=1e-9)
    assert segre_type(rho, tolerance=1e-15).render() == "{1111}"


def test_close_exact_eigenvalues_are_separated():
    rho = Matrix.diag([0, Fraction(1, 10 ** 10), 2, 3])
    assert segre_type(rho, tolerance=1e-9).render() == "{1111}"
    rho = Matrix.diag([1, FieldScalar(1) + FieldScalar(1) / 10 ** 12, 2, 3])
    assert segre_type(rho, tolerance=1e-9).render() == "{1111}"


@pytest.mark.parametrize("values", [
    [Fraction(1, 1234567), 2, 3, 5],
    [2, 3, Fraction(1, 1234567 ** 2), 7],
    [Fraction(-7, 9973), Fraction(5, 9973), Fraction(1, 3), 10 ** 9],
])
def test_rational_eigenvalues_are_exact(values):
    data = ricci_eigendata(Matrix.diag(values))
    assert all(e.exact is not None for e in data.real)
    assert sorted(e.exact for e in data.real) == sorted(FieldScalar.of(v) for v in values)


def test_quadratic_field_eigenvalues_are_exact():
    r3 = FieldScalar.sqrt_of(3)
    roots = [Fraction(1, 7777) + r3 / 3, Fraction(1, 7777) - r3 / 3]
    # 伴随矩阵 [[0, −t], [1, s]], s = 根之和, t = 根之积
    s, t = roots[0] + roots[1], roots[0] * roots[1]
    rho = Matrix.block_diag(Matrix([[0, -t], [1, s]]), Matrix([[0, -6], [1, 5]]))
    assert all(e.exact is None for e in ricci_eigendata(rho).real if e.approx < 1)
    data = ricci_eigendata(rho, field_sqrt=3)
    exact = [e.exact for e in data.real]
    assert None not in exact
    assert set(exact) == {roots[0], roots[1], FieldScalar.of(2), FieldScalar.of(3)}

    # 系数含 √3 的因式: (x − √3)(x − 1/5) ⊕ diag(2, 3)
    a, b = r3, FieldScalar.of(Fraction(1, 5))
    rho = Matrix.block_diag(Matrix([[0, -(a * b)], [1, a + b]]), Matrix.diag([2, 3]))
    assert set(e.exact for e in ricci_eigendata(rho).real) == {a, b, FieldScalar.of(2), FieldScalar.of(3)}


def test_ricci_operator_raises_index(heisenberg):
    metric = Metric.diag([1, 1, -1, 1])
    report = compute_curvature(heisenberg, metric)
    rho = ricci_operator(report.ricci, metric)
    assert rho.is_self_adjoint()
    assert rho.matrix == metric.g_inv @ report.ricci_matrix


@pytest.mark.parametrize("segre", SUPPORTED_PAIRS)
def test_canonical_pairs_have_declared_type(segre):
    for signs in sign_cases(segre):
        pair = canonical_pair(segre, signs)
        assert pair.segre.render() == segre
        assert verify_canonical_pair(pair, random.Random(7))


def test_sign_cases():
    assert len(sign_cases("{(11)(11)}")) == 16
    assert len(sign_cases("{(22)}")) == 4
    assert sign_cases("{1111~}")[0] == (1, 1, 1)


def test_1111_tilde_variants():
    flipped = canonical_pair("{1111~}", (1, 1, 1), MetricVariant.SIGN_FLIPPED)
    literal = canonical_pair("{1111~}", (1, 1, 1), MetricVariant.LITERAL)
    assert flipped.metric.signature == (3, 1)
    assert literal.metric.signature == (4, 0)
    values = {"rho1": 0, "rho2": -8, "alpha": 4, "beta": 4}
    rho_flipped = ricci_operator(flipped.instantiate(values), flipped.metric)
    assert rho_flipped.matrix[2, 3] == 4
    assert rho_flipped.matrix[3, 2] == -4
    # 原样写法下 Ricci 算子是 Riemann 度量的自伴算子, 只有实特征值
    rho_literal = ricci_operator(literal.instantiate(values), literal.metric)
    assert not ricci_eigendata(rho_literal).complex_pairs


def test_unsupported_and_bad_signs():
    with pytest.raises(UnsupportedSegreTypeError) as info:
        canonical_pair("{1111}")
    assert info.value.supported == list(SUPPORTED_PAIRS)
    with pytest.raises(UnsupportedSegreTypeError):
        sign_cases("{4}")
    with pytest.raises(ValueError):
        canonical_pair("{(22)}", (1, 1, 1))
    with pytest.raises(ValueError):
        canonical_pair("{(22)}", (1, 2))


def test_predicates(heisenberg, su2_r):
    flat = compute_curvature(LieAlgebra.abelian(), Metric.identity(4))
    assert predicates(flat).as_dict() == {
        "einstein": True,
        "conformally_flat": True,
        "ricci_parallel": True,
        "sw_zero": True,
        "locally_symmetric": True,
    }
    round_factor = compute_curvature(su2_r, Metric.identity(4))
    assert not is_einstein(round_factor)
    heis = compute_curvature(heisenberg, Metric.identity(4))
    p = predicates(heis)
    assert not p.einstein and not p.sw_zero and not p.ricci_parallel


def test_segre_consistency(heisenberg, su2_r):
    # SW ≠ 0 或平凡情形总是一致的
    assert segre_consistent(compute_curvature(heisenberg, Metric.identity(4)))
    assert segre_consistent(compute_curvature(su2_r, Metric.identity(4)))


def test_signature_admissibility():
    neutral_type = SegreType.parse("{22}")
    assert check_signature_admissible(neutral_type, Metric.diag([1, 1, -1, -1]))
    assert not check_signature_admissible(neutral_type, Metric.diag([1, 1, 1, -1]))
    assert check_signature_admissible(SegreType.parse("{1111~}"), Metric.diag([1, 1, 1, -1]))


def _isometry(rng):
    m, n = rng.sample(range(1, 10), 2)
    c, s = Fraction(m * m - n * n, m * m + n * n), Fraction(2 * m * n, m * m + n * n)
    ch, sh = Fraction(m * m + n * n, 2 * m * n), Fraction(m * m - n * n, 2 * m * n)
    return Matrix.block_diag(Matrix([[c, -s], [s, c]]), Matrix([[ch, sh], [sh, ch]]))


@pytest.mark.parametrize("seed", range(20))
def test_segre_type_is_isometry_invariant(seed):
    r3 = FieldScalar.sqrt_of(3)
    metric = Matrix.diag([1, 1, 1, -1])
    rho = Matrix([[0, 0, 0, 0], [0, -8, 0, 0], [0, 0, 4, 4 * r3], [0, 0, -4 * r3, 4]])
    p = _isometry(random.Random(seed))
    assert p.transpose() @ metric @ p == metric
    conjugated = p.inverse() @ rho @ p
    assert (metric @ conjugated).is_symmetric()
    assert segre_type(conjugated).render() == "{1111~}"


CORPUS = corpus_members()


@pytest.mark.parametrize("label, algebra, metric", CORPUS, ids=[m[0] for m in CORPUS])
def test_predicate_chain(label, algebra, metric):
    p = predicates(compute_curvature(algebra, metric))
    if p.einstein:
        assert p.ricci_parallel
    if p.ricci_parallel:
        assert p.sw_zero
    if p.locally_symmetric:
        assert p.ricci_parallel


def test_nontrivial_sw_zero_types_are_listed():
    nontrivial = 0
    for label, algebra, metric in CORPUS:
        report = compute_curvature(algebra, metric)
        p = predicates(report)
        if p.sw_zero and not (p.einstein or p.conformally_flat or p.ricci_parallel):
            nontrivial += 1
            segre = segre_type(ricci_operator(report.ricci, metric))
            assert segre.render() in SW_NONTRIVIAL_TYPES, label
        assert segre_consistent(report), label
    # 解族的 sign-flipped 写法
    assert nontrivial >= 6
