"""报告的文本与 JSON 输出"""

from typing import List, Sequence

from ..models.schemas import (
    AnalysisReport,
    CheckReport,
    ErrorReport,
    ExactValue,
    FamilyReport,
    IdentityReport,
    SystemReport,
    TensorEntry,
)


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _value(v: ExactValue) -> str:
    if v.exact == v.decimal:
        return v.exact
    return f"{v.exact}  (≈ {v.decimal})"


def _tensor_lines(name: str, entries: Sequence[TensorEntry]) -> List[str]:
    lines = [f"[{name}] {len(entries)}"]
    for e in entries:
        index = ",".join(str(i) for i in e.index)
        lines.append(f"  {name}[{index}] = {_value(e.value)}")
    return lines


def _identity_lines(identities: IdentityReport) -> List[str]:
    return [
        "[identities]",
        f"  divergence_identity = {_flag(identities.divergence_identity)}",
        f"  codazzi_symmetry = {_flag(identities.codazzi_symmetry)}",
        f"  sw_zero = {_flag(identities.sw_zero)}",
        f"  equivalence = {_flag(identities.equivalence)}",
        f"  passed = {_flag(identities.passed)}",
    ]


def render_analysis_text(report: AnalysisReport) -> str:
    """人类可读的分析报告, 分量顺序与 JSON 一致"""
    lines = [
        f"# lie-sw {report.app_version} analysis (schema {report.schema_version})",
        f"dim = {report.dim}",
        f"field = Q(sqrt({report.field_sqrt}))",
        f"signature = ({report.signature[0]}, {report.signature[1]})",
        f"jacobi = {'ok' if report.jacobi_ok else 'violated'}",
        f"segre = {report.segre or '?'}",
    ]
    if report.segre_human:
        lines.append(f"segre_human = {report.segre_human}")
    lines.append(f"neutral_only = {_flag(report.neutral_only)}")
    lines.append(f"signature_admissible = {_flag(report.signature_admissible)}")
    lines.append(f"segre_consistent = {_flag(report.segre_consistent)}")
    lines.append(f"scalar = {_value(report.scalar)}")

    lines.append("[predicates]")
    for name, value in report.predicates.model_dump().items():
        lines.append(f"  {name} = {_flag(value)}")

    lines.append("[eigen]")
    for e in report.eigen.real:
        exact = e.value.exact if e.value is not None else "?"
        lines.append(f"  real {exact}  (≈ {e.approx})  x{e.multiplicity}")
    for p in report.eigen.complex_pairs:
        alpha = p.alpha.exact if p.alpha is not None else "?"
        beta = p.beta.exact if p.beta is not None else "?"
        lines.append(f"  complex {alpha} ± i*{beta}  (≈ {p.approx_alpha} ± i*{p.approx_beta})  x{p.multiplicity}")

    lines.extend(_identity_lines(report.identities))
    for name, entries in (
        ("Gamma", report.christoffel),
        ("R", report.riemann),
        ("r", report.ricci),
        ("A", report.one_dim_curvature),
        ("W", report.weyl),
        ("SW", report.schouten_weyl),
        ("divW", report.div_weyl),
        ("nabla_r", report.nabla_ricci),
    ):
        lines.extend(_tensor_lines(name, entries))
    return "\n".join(lines) + "\n"


def render_family_text(report: FamilyReport) -> str:
    eps = ", ".join(f"eps{i + 1}={s:+d}" for i, s in enumerate(report.signs))
    lines = [
        f"# family a={report.a.exact}, delta={report.delta:+d}, {eps}, metric={report.metric_variant}",
    ]
    for name, value in report.expected.items():
        lines.append(f"expected {name} = {_value(value)}")
    lines.extend([
        f"operator_entries_match = {_flag(report.operator_entries_match)}",
        f"eigen_match = {_flag(report.eigen_match)}",
        f"complex_pair_present = {_flag(report.complex_pair_present)}",
        f"reproduces_family = {_flag(report.reproduces_family)}",
    ])
    return "\n".join(lines) + "\n" + render_analysis_text(report.analysis)


def render_check_text(report: CheckReport) -> str:
    lines = [f"jacobi = {'ok' if report.jacobi_ok else 'violated'}"]
    lines.extend(_identity_lines(report.identities))
    lines.append("result = " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"


def render_system_extras(report: SystemReport) -> str:
    """线性约化与求解摘要, 追加在方程组输出之后"""
    lines: List[str] = []
    if report.reduction is not None:
        r = report.reduction
        lines.append(f"[reduction] rank={r.rank}")
        lines.append("# forced_zero: " + (", ".join(r.forced_zero) or "none"))
        lines.extend(f"relation {p}" for p in r.relations)
        lines.extend(f"condition {p}" for p in r.conditions)
        if r.ricci_parallel is not None:
            lines.append(f"# ricci_parallel_on_solution: {_flag(r.ricci_parallel)}")
    if report.solution is not None:
        s = report.solution
        lines.append(f"[solution] {len(s.basis)}")
        lines.append(
            f"# strategy={s.strategy}, sections={','.join(s.sections)}, saturated={_flag(s.saturated)}, "
            f"budget_exhausted={_flag(s.budget_exhausted)}, inconsistent={_flag(s.inconsistent)}"
        )
        lines.extend(s.basis)
    return "\n".join(lines) + "\n" if lines else ""


def render_error_text(report: ErrorReport) -> str:
    lines = [f"错误 [{report.error_code}] (exit {report.exit_code}): {report.message}"]
    lines.extend(f"  {d}" for d in report.details)
    return "\n".join(lines) + "\n"


def render_json(model) -> str:
    return model.model_dump_json(indent=2) + "\n"
