import pytest

from lie_sw.agents.analyzer import MetricLieAnalyzer, get_analyzer
from lie_sw.core.matrix import DimensionMismatchError
from lie_sw.services.classification import UnsupportedSegreTypeError
from lie_sw.services.curvature import Metric
from lie_sw.services.lie_algebra import JacobiViolationError, LieAlgebra
from lie_sw.utils.input_parser import load_document, parse_document


@pytest.fixture
def analyzer(settings):
    return MetricLieAnalyzer(settings)


def test_analyze_round_factor(analyzer, su2_r):
    report = analyzer.analyze_algebra(su2_r, Metric.identity(4))
    assert report.segre == "{1(111)}"
    assert report.predicates.sw_zero
    assert report.predicates.conformally_flat
    assert not report.predicates.einstein
    assert report.identities.passed
    assert [e.value.exact for e in report.eigen.real] == ["0", "1/2"]
    assert [e.multiplicity for e in report.eigen.real] == [1, 3]


def test_analyze_lorentz_sample(analyzer, sample_path):
    report = analyzer.analyze(load_document(sample_path("lorentz_full.txt")))
    assert report.signature == [3, 1]
    assert report.identities.passed


def test_analyze_rejects_invalid_input(analyzer):
    with pytest.raises(JacobiViolationError):
        analyzer.analyze(parse_document("metric = diag(1, 1, 1, 1)\nC 1 2 3 = 1\nC 1 3 1 = 1\n"))
    with pytest.raises(DimensionMismatchError):
        analyzer.analyze_algebra(LieAlgebra(3, {(1, 2, 3): 1}), Metric.identity(3))


def test_family_report(analyzer):
    report = analyzer.family("1")
    assert report.reproduces_family
    assert report.expected["beta"].exact == "4*sqrt(3)"
    assert report.expected["rho2"].exact == "-8"
    assert report.analysis.segre == "{1111~}"
    assert report.signs == [1, 1, 1]


def test_generate_system(analyzer):
    system, report = analyzer.generate_system("{(11)(11)}", (1, 1, -1, -1), reduce=True)
    assert report.signs == [1, 1, -1, -1]
    assert len(report.sections["sw"]) == len(system.sw_eqs)
    assert report.assumptions == ["rho1 - rho2"]
    assert report.reduction.rank == 16
    assert report.reduction.ricci_parallel is True
    assert report.solution is None
    with pytest.raises(UnsupportedSegreTypeError):
        analyzer.generate_system("{1111}", (1, 1, 1, 1))


def test_solve_within_budget(analyzer):
    system, report = analyzer.generate_system("{(22)}", (1, 1), solve="linear-then-gb", sections=("sw",))
    assert report.solution is not None
    assert report.solution.sections == ["sw"]
    assert not report.solution.saturated


def test_sign_cases_parallel_matches_serial(settings):
    serial = MetricLieAnalyzer(settings).analyze_sign_cases("{(22)}")
    parallel = MetricLieAnalyzer(settings.model_copy(update={"parallel_cases": True})).analyze_sign_cases("{(22)}")
    assert [r.model_dump() for _, r in serial] == [r.model_dump() for _, r in parallel]
    assert [r.signs for _, r in serial] == [[1, 1], [1, -1], [-1, 1], [-1, -1]]


def test_singleton():
    assert get_analyzer() is get_analyzer()
