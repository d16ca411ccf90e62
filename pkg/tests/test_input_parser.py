import pytest

from lie_sw.core.field import FieldScalar
from lie_sw.services.curvature import DegenerateMetricError
from lie_sw.services.constraints import family_algebra, family_metric
from lie_sw.utils.input_parser import (
    InputParseError,
    build_algebra,
    build_metric,
    document_from_algebra,
    load_document,
    parse_document,
    render_document,
)


@pytest.mark.parametrize("name", ["abelian.txt", "family.txt", "heisenberg.txt", "lorentz_full.txt"])
def test_samples_parse(sample_path, name):
    document = load_document(sample_path(name))
    assert document.dim == 4
    assert build_metric(document).dim == 4
    assert build_algebra(document).jacobi_check().ok


def test_family_sample(sample_path):
    document = load_document(sample_path("family.txt"))
    assert document.field_sqrt == 3
    assert document.params == {"a": "1", "delta": "1"}
    algebra = build_algebra(document)
    assert algebra.C(1, 2, 2) == -FieldScalar.sqrt_of(3)
    assert build_metric(document).signature == (3, 1)


def test_full_metric_rows(sample_path):
    document = load_document(sample_path("lorentz_full.txt"))
    assert not document.metric_is_diagonal
    assert document.metric[2] == ["0", "0", "0", "1"]
    assert build_metric(document).is_lorentzian


def test_values_are_canonicalised():
    document = parse_document(
        "field_sqrt = 2\n"
        "metric = diag(1, 2/4, 1, -1)  # 尾注释\n"
        "C 1 2 3 = 1/2 - 3*sqrt(2)\n"
    )
    assert document.metric[1][1] == "1/2"
    assert document.constants[0].value == "1/2-3*sqrt(2)"


def test_render_round_trip(sample_path):
    for name in ("family.txt", "lorentz_full.txt"):
        document = load_document(sample_path(name))
        assert parse_document(render_document(document)) == document


def test_document_from_algebra():
    document = document_from_algebra(family_algebra(1), family_metric(), {"a": "1"})
    assert document.field_sqrt == 3
    assert document.metric_is_diagonal
    assert [(c.i, c.j, c.k) for c in document.constants] == [
        (2, 3, 3), (2, 3, 4), (2, 4, 3), (2, 4, 4), (3, 4, 2),
    ]
    assert parse_document(render_document(document)) == document


@pytest.mark.parametrize("text,fragment", [
    ("metric = diag(1, 1, 1, 1)\ncolour = 3\n", "未知的键"),
    ("metric = diag(1, 1, 1, 1)\nC 1 2 3 = 1\nC 1 2 3 = 2\n", "duplicate assignment: C 1 2 3"),
    ("dim = 4\ndim = 4\nmetric = diag(1, 1, 1, 1)\n", "duplicate assignment: dim"),
    ("metric = diag(1, 1, 1, 1)\nC 2 1 3 = 1\n", "i < j"),
    ("metric = diag(1, 1, 1, 1)\nC 1 2 5 = 1\n", "超出"),
    ("metric = diag(1, 1, 1, 1)\nmetric_row 1 = 1, 0, 0, 0\n", "不能同时使用"),
    ("C 1 2 3 = 1\n", "缺少度量"),
    ("metric = diag(1, 1, 1)\n", "需要 4 个数值"),
    ("metric = diag(1, 1, 1, 1)\nC 1 2 3 = sqrt(3)\n", "field_sqrt"),
    ("field_sqrt = 4\nmetric = diag(1, 1, 1, 1)\n", "无平方因子"),
    ("metric = diag(1, 1, 1, 1)\nC 1 2 3 = abc\n", "第 2 行"),
    ("metric = diag(1, 1, 1, 1)\nparam zeta = 1\n", "未知的参数"),
    ("this is not an assignment\n", "无法识别"),
])
def test_rejections(text, fragment):
    with pytest.raises(InputParseError) as info:
        parse_document(text)
    assert fragment in str(info.value)


def test_asymmetric_metric_rows():
    text = (
        "metric_row 1 = 1, 2, 0, 0\n"
        "metric_row 2 = 0, 1, 0, 0\n"
        "metric_row 3 = 0, 0, 1, 0\n"
        "metric_row 4 = 0, 0, 0, 1\n"
    )
    with pytest.raises(InputParseError) as info:
        parse_document(text)
    assert info.value.line == 2


def test_error_line_numbers():
    with pytest.raises(InputParseError) as info:
        parse_document("# 注释\n\nmetric = diag(1, 1, 1, 1)\nC 1 2 3 = 1\nC 1 2 3 = 1\n")
    assert info.value.line == 5
    assert str(info.value).startswith("第 5 行: ")


def test_missing_file():
    with pytest.raises(InputParseError):
        load_document("/nonexistent/lie_sw_input.txt")


def test_degenerate_metric_surfaces_at_build_time():
    document = parse_document("metric = diag(1, 1, 0, 1)\n")
    with pytest.raises(DegenerateMetricError):
        build_metric(document)
