import json

from .leave_one_out import LABELS, EvalReport

NOT_AVAILABLE = "n/a"
UNIT_NOTE = "accuracy is counted per plan document: each plan is predicted once from all the others"


def _rate(value):
    return NOT_AVAILABLE if value is None else f"{value:.4f}"


def render_text(report: EvalReport) -> str:
    names = [label.label for label in LABELS]
    lines = [
        f"approach               {report.approach.value}",
        f"k                      {report.k}",
        f"plans                  {report.size}",
        f"accuracy               {_rate(report.accuracy)}",
        f"simple as heavier      {_rate(report.err_simple_as_heavier)}",
        f"heavier as simple      {_rate(report.err_heavy_as_simple)}",
        "",
        "confusion (rows actual, columns predicted)",
        " " * 10 + "".join(f"{name:>9}" for name in names),
    ]
    for name, row in zip(names, report.confusion):
        lines.append(f"{name:<10}" + "".join(f"{count:>9}" for count in row))

    lines += ["", "accuracy by nearest-neighbour node distance", f"{'distance':<10}{'plans':>7}{'accuracy':>10}"]
    for bucket, stats in report.buckets().items():
        lines.append(f"{bucket:<10}{stats['plans']:>7}{_rate(stats['accuracy']):>10}")

    lines += ["", f"note: {UNIT_NOTE}"]
    return "\n".join(lines)


def render_json(report: EvalReport) -> str:
    return json.dumps({**report.to_dict(), "note": UNIT_NOTE}, indent=2, sort_keys=True)


def report_from_json(text: str) -> EvalReport:
    return EvalReport.from_dict(json.loads(text))
