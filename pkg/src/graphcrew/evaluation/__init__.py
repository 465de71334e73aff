"""Scoring, cost accounting, and report rendering for solve runs."""

from .scoring import (
    InstanceScore,
    TaskSummary,
    aggregate_scores,
    overall_summary,
    score_failure,
    score_instance,
    score_prediction,
)
from .costs import (
    CostReport,
    InstanceCost,
    RateConfig,
    StageCost,
    cost_report,
    price_of,
)
from .reports import (
    render_accuracy_table,
    render_cost_table,
    scores_from_records,
    scores_to_records,
)

__all__ = [
    "CostReport",
    "InstanceCost",
    "InstanceScore",
    "RateConfig",
    "StageCost",
    "TaskSummary",
    "aggregate_scores",
    "cost_report",
    "overall_summary",
    "price_of",
    "render_accuracy_table",
    "render_cost_table",
    "score_failure",
    "score_instance",
    "score_prediction",
    "scores_from_records",
    "scores_to_records",
]
