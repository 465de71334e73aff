"""Human tables and machine records for evaluation output.

Fractions stay exact until the last moment; tables show percentages to
one decimal and prices to six, records carry the raw rationals as
strings so a round-trip loses nothing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .costs import CostReport
from .scoring import InstanceScore, TaskSummary


def _pct(value: Fraction) -> str:
    return f"{float(value) * 100:.1f}%"


def _money(value: Fraction, currency: str) -> str:
    unit = "$" if currency == "USD" else currency + " "
    return f"{unit}{float(value):.6f}"


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells: list[str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines)


def render_accuracy_table(
    summaries: dict[str, TaskSummary], overall: TaskSummary | None = None
) -> str:
    headers = ["task", "instances", "acc_all", "acc_nodes", "acc_result", "error_rate"]
    rows = []
    for task in sorted(summaries):
        s = summaries[task]
        rows.append([
            task,
            str(s.instance_count),
            _pct(s.mean_acc_all),
            _pct(s.mean_acc_nodes),
            _pct(s.mean_acc_result),
            _pct(s.error_rate),
        ])
    if overall is not None:
        rows.append([
            "overall",
            str(overall.instance_count),
            _pct(overall.mean_acc_all),
            _pct(overall.mean_acc_nodes),
            _pct(overall.mean_acc_result),
            _pct(overall.error_rate),
        ])
    return _table(headers, rows)


def render_cost_table(report: CostReport) -> str:
    headers = ["stage", "calls", "input_tokens", "output_tokens", "price"]
    rows = [
        [
            stage.stage,
            str(stage.calls),
            str(stage.input_tokens),
            str(stage.output_tokens),
            _money(stage.price, report.currency),
        ]
        for stage in report.stages
    ]
    rows.append([
        "total",
        str(report.total_calls),
        str(report.total_input_tokens),
        str(report.total_output_tokens),
        _money(report.total_price, report.currency),
    ])
    return _table(headers, rows)


def scores_to_records(scores: list[InstanceScore]) -> list[dict[str, Any]]:
    records = []
    for score in scores:
        record: dict[str, Any] = {
            "id": score.instance_id,
            "problem_type": score.problem_type,
            "acc_nodes": str(score.acc_nodes),
            "acc_result": str(score.acc_result),
            "acc_all": str(score.acc_all),
        }
        if score.failure_reason is not None:
            record["failure_reason"] = score.failure_reason
        records.append(record)
    return records


def scores_from_records(records: list[dict[str, Any]]) -> list[InstanceScore]:
    return [
        InstanceScore(
            instance_id=record["id"],
            problem_type=record["problem_type"],
            acc_nodes=Fraction(record["acc_nodes"]),
            acc_result=Fraction(record["acc_result"]),
            acc_all=Fraction(record["acc_all"]),
            failure_reason=record.get("failure_reason"),
        )
        for record in records
    ]
