"""Text and JSON serialization of run reports."""

from __future__ import annotations

import json
from dataclasses import asdict

import numpy as np

from .confidence import format_confidence_matrix
from .pipeline import RunReport, SummaryRow, accuracy_percent, format_percent

FORMATS = ("text", "json")
_W = 16  # summary column width


def _label(v: int, n_classes: int) -> str:
    return "REJECT" if v == n_classes else str(v)


def format_summary(report: RunReport) -> str:
    m = report.n_classes
    with_conf = any(r.confs is not None for r in report.rows)
    head = f"{'SAMPLE':<8}" + "".join(f"{f'CLASSIFIER-{i + 1}':>{_W}}" for i in range(3))
    head += f"{'ACTUAL':>{_W}}{'PREDICTED':>{_W}}"
    if with_conf:
        head += "".join(f"{f'CONF-{i + 1}':>{_W}}" for i in range(3)) + f"{'RESULT':>{_W}}"
    lines = ["SUMMARY OF THE FINAL HYPOTHESIS", head]
    for r in report.rows:
        line = f"{r.sample:<8d}" + "".join(f"{p:>{_W}d}" for p in r.preds)
        line += f"{r.actual:>{_W}d}{_label(r.predicted, m):>{_W}}"
        if with_conf:
            line += "".join(f"{c:>{_W}.6f}" for c in r.confs) + f"{r.result:>{_W}.6f}"
        lines.append(line)
    return "\n".join(lines)


def format_confusion(cm, title: str) -> str:
    """Rows are predicted classes, columns actual classes."""
    n = len(cm)
    w = max(4, len(str(max((max(row) for row in cm), default=0))) + 1, len(str(n)) + 1)
    lines = [title, f"{'':<8}" + "".join(f"{c:>{w}d}" for c in range(n))]
    for p, row in enumerate(cm):
        lines.append(f"{p:<8d}" + "".join(f"{v:>{w}d}" for v in row))
    return "\n".join(lines)


def format_text(report: RunReport) -> str:
    parts = [
        "\n".join([
            f"HYPOTHESIS = {report.hypothesis}",
            f"SEED = {report.seed}",
            f"RNG = {report.rng}",
            f"CLASSES = {report.n_classes}",
            "CLASS LABELS = " + ", ".join(str(c) for c in report.class_labels),
        ]),
        format_confidence_matrix(_conf_array(report.confidence)),
        "\n".join(f"CLASSIFIER-{i + 1} ACCURACY = {format_percent(a)} %"
                  for i, a in enumerate(report.base_accuracies)),
    ]
    for i, cm in enumerate(report.confusions):
        parts.append(format_confusion(cm, f"CONFUSION MATRIX OF CLASSIFIER-{i + 1} (ROWS PREDICTED, COLUMNS ACTUAL)"))
    parts.append(format_summary(report))
    discarded = ", ".join(str(s) for s in report.discarded) if report.discarded else "none"
    parts.append("\n".join([
        f"CONSIDERED = {report.considered}",
        f"CORRECT = {report.correct}",
        f"ACCURACY = {accuracy_percent(report.correct, report.considered):.2f} %",
        f"The samples discarded are: {discarded}.",
    ]))
    return "\n\n".join(parts) + "\n"


def _conf_array(conf) -> np.ndarray:
    return np.asarray(conf, dtype=np.float64) if len(conf) else np.zeros((0, 3))


def to_dict(report: RunReport) -> dict:
    return asdict(report)


def from_dict(d: dict) -> RunReport:
    d = dict(d)
    d["rows"] = [SummaryRow(**r) for r in d.get("rows", [])]
    return RunReport(**d)


def emit_report(report: RunReport, fmt: str = "text") -> str:
    if fmt == "text":
        return format_text(report)
    if fmt == "json":
        return json.dumps(to_dict(report), indent=1, sort_keys=True) + "\n"
    raise ValueError(f"unknown report format {fmt!r}; choose from {FORMATS}")


def parse_json_report(text: str) -> RunReport:
    return from_dict(json.loads(text))
