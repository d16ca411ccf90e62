"""度量李代数输入文件的解析与输出"""

import re
from typing import Dict, List, Optional, Tuple

from loguru import logger
from pydantic import ValidationError

from ..core.field import FieldMismatchError, FieldScalar, is_square_free
from ..core.matrix import Matrix
from ..models.schemas import InputDocument, StructureConstant
from ..services.curvature import Metric
from ..services.lie_algebra import LieAlgebra

_KEY_RE = re.compile(r"^(?P<key>[A-Za-z_]+)(?P<args>(?:\s+[A-Za-z0-9_]+)*)\s*=\s*(?P<value>.*)$")
_DIAG_RE = re.compile(r"^diag\s*\((?P<body>.*)\)$")

KNOWN_KEYS = ("dim", "field_sqrt", "metric", "metric_row", "C", "param")


class InputParseError(ValueError):
    """输入文件格式错误"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"第 {line} 行: " if line is not None else ""
        super().__init__(prefix + message)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _split_values(text: str, line_no: int) -> List[str]:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise InputParseError(f"逗号分隔的数值列表不完整: {text!r}", line_no)
    return parts


def _parse_int(text: str, what: str, line_no: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputParseError(f"{what} 必须是整数: {text!r}", line_no)


def _canonical(text: str, d: int, line_no: int) -> str:
    """把数值字符串规范化为 `p/q+r/s*sqrt(d)` 格式"""
    try:
        return FieldScalar.parse(text, d).to_exact_string()
    except FieldMismatchError as e:
        raise InputParseError(f"根式与 field_sqrt = {d} 不一致: {e}", line_no)
    except ValueError as e:
        raise InputParseError(str(e), line_no)


def parse_document(text: str) -> InputDocument:
    """
    解析行式输入文件

    语法:
        dim = 4
        field_sqrt = 3
        metric = diag(1, 1, 1, -1)      # 或逐行: metric_row i = v1, v2, v3, v4
        C 2 3 3 = -sqrt(3)              # C_23^3, 只接受 i < j
        param a = 1

    Args:
        text: 文件内容

    Returns:
        InputDocument

    Raises:
        InputParseError: 未知键、重复赋值、下标不合法或数值无法解析
    """
    scalars: Dict[str, Tuple[str, int]] = {}
    diag: Optional[Tuple[List[str], int]] = None
    rows: Dict[int, Tuple[List[str], int]] = {}
    constants: Dict[Tuple[int, int, int], Tuple[str, int]] = {}
    params: Dict[str, Tuple[str, int]] = {}

    # 第一遍: 语法结构, 数值延后到 field_sqrt 确定之后再解析
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        match = _KEY_RE.match(line)
        if not match:
            raise InputParseError(f"无法识别的行: {raw.strip()!r}", line_no)
        key, value = match.group("key"), match.group("value").strip()
        args = match.group("args").split()
        if key not in KNOWN_KEYS:
            raise InputParseError(f"未知的键: {key}", line_no)
        if not value:
            raise InputParseError(f"{key} 缺少取值", line_no)

        if key in ("dim", "field_sqrt"):
            if args:
                raise InputParseError(f"{key} 不接受下标", line_no)
            if key in scalars:
                raise InputParseError(f"duplicate assignment: {key}", line_no)
            scalars[key] = (value, line_no)
        elif key == "metric":
            if args:
                raise InputParseError("metric 不接受下标", line_no)
            diag_match = _DIAG_RE.match(value)
            if not diag_match:
                raise InputParseError(f"metric 只接受 diag(...) 形式: {value!r}", line_no)
            if diag is not None:
                raise InputParseError("duplicate assignment: metric", line_no)
            diag = (_split_values(diag_match.group("body"), line_no), line_no)
        elif key == "metric_row":
            if len(args) != 1:
                raise InputParseError("metric_row 需要恰好一个行号", line_no)
            i = _parse_int(args[0], "行号", line_no)
            if i in rows:
                raise InputParseError(f"duplicate assignment: metric_row {i}", line_no)
            rows[i] = (_split_values(value, line_no), line_no)
        elif key == "C":
            if len(args) != 3:
                raise InputParseError("结构常数需要三个下标: C i j k = 值", line_no)
            i, j, k = (_parse_int(a, "下标", line_no) for a in args)
            if i >= j:
                raise InputParseError(f"结构常数只接受 i < j: C {i} {j} {k}", line_no)
            if (i, j, k) in constants:
                raise InputParseError(f"duplicate assignment: C {i} {j} {k}", line_no)
            constants[(i, j, k)] = (value, line_no)
        else:
            if len(args) != 1:
                raise InputParseError("参数需要名字: param 名字 = 值", line_no)
            if args[0] in params:
                raise InputParseError(f"duplicate assignment: param {args[0]}", line_no)
            params[args[0]] = (value, line_no)

    dim_text, dim_line = scalars.get("dim", ("4", None))
    dim = _parse_int(dim_text, "dim", dim_line)
    d_text, d_line = scalars.get("field_sqrt", ("1", None))
    d = _parse_int(d_text, "field_sqrt", d_line)
    if not is_square_free(d):
        raise InputParseError(f"field_sqrt = {d} 必须是无平方因子的非负整数", d_line)

    # 第二遍: 数值
    if diag is not None and rows:
        raise InputParseError("metric 与 metric_row 不能同时使用", rows[min(rows)][1])
    if diag is not None:
        values, line_no = diag
        if len(values) != dim:
            raise InputParseError(f"diag(...) 需要 {dim} 个数值, 实际为 {len(values)}", line_no)
        entries = [_canonical(v, d, line_no) for v in values]
        metric = [[entries[i] if i == j else "0" for j in range(dim)] for i in range(dim)]
        is_diagonal = True
    elif rows:
        if sorted(rows) != list(range(1, dim + 1)):
            raise InputParseError(f"metric_row 必须恰好覆盖 1..{dim}, 实际为 {sorted(rows)}")
        metric = []
        for i in range(1, dim + 1):
            values, line_no = rows[i]
            if len(values) != dim:
                raise InputParseError(f"metric_row {i} 需要 {dim} 个数值, 实际为 {len(values)}", line_no)
            metric.append([_canonical(v, d, line_no) for v in values])
        for i in range(dim):
            for j in range(i):
                if metric[i][j] != metric[j][i]:
                    raise InputParseError(f"度量矩阵不对称: g_{i + 1}{j + 1} ≠ g_{j + 1}{i + 1}", rows[i + 1][1])
        is_diagonal = False
    else:
        raise InputParseError("缺少度量: metric = diag(...) 或 metric_row")

    structure = []
    for (i, j, k), (value, line_no) in constants.items():
        if max(i, j, k) > dim or min(i, j, k) < 1:
            raise InputParseError(f"结构常数下标超出 1..{dim}: C {i} {j} {k}", line_no)
        structure.append(StructureConstant(i=i, j=j, k=k, value=_canonical(value, d, line_no)))

    bindings = {name: _canonical(value, d, line_no) for name, (value, line_no) in params.items()}

    try:
        document = InputDocument(
            dim=dim,
            field_sqrt=d,
            metric=metric,
            metric_is_diagonal=is_diagonal,
            constants=structure,
            params=bindings,
        )
    except ValidationError as e:
        raise InputParseError(f"输入文档不合法: {e.errors()[0]['msg']}")

    logger.debug(f"解析输入: dim={dim}, d={d}, {len(structure)} 个结构常数, {len(bindings)} 个参数")
    return document


def render_document(document: InputDocument) -> str:
    """按输入语法输出文档, parse_document(render_document(doc)) == doc"""
    lines = [f"dim = {document.dim}", f"field_sqrt = {document.field_sqrt}"]
    if document.metric_is_diagonal:
        diagonal = ", ".join(document.metric[i][i] for i in range(document.dim))
        lines.append(f"metric = diag({diagonal})")
    else:
        for i, row in enumerate(document.metric, start=1):
            lines.append(f"metric_row {i} = " + ", ".join(row))
    for c in document.constants:
        lines.append(f"C {c.i} {c.j} {c.k} = {c.value}")
    for name, value in document.params.items():
        lines.append(f"param {name} = {value}")
    return "\n".join(lines) + "\n"


def load_document(path: str) -> InputDocument:
    """读取并解析输入文件"""
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise InputParseError(f"无法读取输入文件 {path}: {e}")
    return parse_document(text)


def build_algebra(document: InputDocument) -> LieAlgebra:
    """由文档构造具体李代数"""
    d = document.field_sqrt
    constants = {
        (c.i, c.j, c.k): FieldScalar.parse(c.value, d)
        for c in document.constants
    }
    return LieAlgebra(document.dim, constants, d)


def build_metric(document: InputDocument) -> Metric:
    """由文档构造度量, 退化时抛出 DegenerateMetricError"""
    d = document.field_sqrt
    return Metric(Matrix([[FieldScalar.parse(v, d) for v in row] for row in document.metric]))


def document_from_algebra(algebra: LieAlgebra, metric: Metric, params: Optional[Dict[str, str]] = None) -> InputDocument:
    """把具体代数与度量写回文档(用于生成解族输入文件)"""
    dim = algebra.dim
    metric_rows = [[metric[i, j].to_exact_string() for j in range(dim)] for i in range(dim)]
    diagonal = all(not metric[i, j] for i in range(dim) for j in range(dim) if i != j)
    constants = [
        StructureConstant(i=i, j=j, k=k, value=v.to_exact_string())
        for (i, j, k), v in sorted(algebra.constants().items())
    ]
    return InputDocument(
        dim=dim,
        field_sqrt=algebra.d,
        metric=metric_rows,
        metric_is_diagonal=diagonal,
        constants=constants,
        params=dict(params or {}),
    )


__all__ = [
    "InputParseError",
    "parse_document",
    "render_document",
    "load_document",
    "build_algebra",
    "build_metric",
    "document_from_algebra",
]
