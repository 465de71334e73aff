"""Instance scoring: half for the node set, half for the value.

A prediction earns its result point by stating the true objective value
exactly, and its node point by presenting a payload that is structurally
valid on the hidden graph and whose recomputed objective matches the
optimum.  Recomputed, not quoted: a payload cannot vouch for itself, so
the stated objective is ignored when judging the node set.  Any optimal
payload is accepted, since optima are rarely unique.

Boolean tasks have no node set; their composite score is the result
score, and the node score mirrors it so both composition rules hold.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from ..graph import Graph, GraphError, Weight
from ..problems import (
    BOOLEAN,
    COLORING,
    KIND_BY_PROBLEM,
    NODE_SET,
    PATH,
    TOUR,
    check_problem_type,
)
from ..solvers import KindMismatchError, Solution, verify_solution

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class InstanceScore:
    instance_id: str
    problem_type: str
    acc_nodes: Fraction
    acc_result: Fraction
    acc_all: Fraction
    failure_reason: str | None = None


@dataclass(frozen=True)
class TaskSummary:
    problem_type: str
    instance_count: int
    mean_acc_all: Fraction
    mean_acc_nodes: Fraction
    mean_acc_result: Fraction
    error_rate: Fraction


def _recompute_objective(graph: Graph, solution: Solution) -> Weight | None:
    """Objective implied by the payload alone; None if the payload is broken."""
    try:
        if solution.kind == TOUR:
            order = solution.payload
            if not order:
                return None
            total: Weight = 0
            for i, name in enumerate(order):
                u = graph.index_of(name)
                v = graph.index_of(order[(i + 1) % len(order)])
                total += graph.weight(u, v)
            return total
        if solution.kind == COLORING:
            return len(set(solution.payload.values()))
        if solution.kind == NODE_SET:
            return len(solution.payload)
        if solution.kind == PATH:
            path = solution.payload
            if not path:
                return None
            total = 0
            for a, b in zip(path, path[1:]):
                total += graph.weight(graph.index_of(a), graph.index_of(b))
            return total
        if solution.kind == BOOLEAN:
            return int(bool(solution.payload))
    except (GraphError, ValueError, KeyError, TypeError, AttributeError):
        return None
    return None


def score_instance(
    prediction: Solution,
    truth: Solution,
    problem_type: str,
    graph: Graph,
    source: str | None = None,
    target: str | None = None,
    instance_id: str = "",
) -> InstanceScore:
    """Score one prediction against the known best solution.

    Raises KindMismatchError when the prediction answers a different
    problem shape than the task asks for.
    """
    check_problem_type(problem_type)
    expected_kind = KIND_BY_PROBLEM[problem_type]
    if prediction.kind != expected_kind:
        raise KindMismatchError(
            f"{problem_type} expects a {expected_kind} answer, got {prediction.kind}"
        )

    acc_result = Fraction(int(prediction.objective == truth.objective))

    if expected_kind == BOOLEAN:
        acc_nodes = acc_result
        acc_all = acc_result
    else:
        acc_nodes = Fraction(0)
        recomputed = _recompute_objective(graph, prediction)
        if recomputed is not None and recomputed == truth.objective:
            candidate = replace(prediction, objective=recomputed)
            try:
                report = verify_solution(
                    problem_type, graph, candidate, source=source, target=target
                )
            except (ValueError, KeyError):
                report = None
            if report is not None and report.valid:
                acc_nodes = Fraction(1)
        acc_all = HALF * acc_nodes + HALF * acc_result

    return InstanceScore(
        instance_id=instance_id,
        problem_type=problem_type,
        acc_nodes=acc_nodes,
        acc_result=acc_result,
        acc_all=acc_all,
    )


def score_failure(instance_id: str, problem_type: str, reason: str) -> InstanceScore:
    """A pipeline or parse failure scores zero and carries its reason."""
    zero = Fraction(0)
    return InstanceScore(
        instance_id=instance_id,
        problem_type=problem_type,
        acc_nodes=zero,
        acc_result=zero,
        acc_all=zero,
        failure_reason=reason,
    )


def score_prediction(
    prediction: Solution | None,
    truth: Solution,
    problem_type: str,
    graph: Graph,
    source: str | None = None,
    target: str | None = None,
    instance_id: str = "",
    failure: str | None = None,
) -> InstanceScore:
    """Lenient front door: failures and wrong-kind answers score zero."""
    if prediction is None:
        return score_failure(instance_id, problem_type, failure or "no answer produced")
    try:
        return score_instance(
            prediction, truth, problem_type, graph,
            source=source, target=target, instance_id=instance_id,
        )
    except KindMismatchError as exc:
        return score_failure(instance_id, problem_type, str(exc))


def _summarize(problem_type: str, scores: list[InstanceScore]) -> TaskSummary:
    count = len(scores)
    failures = sum(1 for s in scores if s.failure_reason is not None)
    return TaskSummary(
        problem_type=problem_type,
        instance_count=count,
        mean_acc_all=sum((s.acc_all for s in scores), Fraction(0)) / count,
        mean_acc_nodes=sum((s.acc_nodes for s in scores), Fraction(0)) / count,
        mean_acc_result=sum((s.acc_result for s in scores), Fraction(0)) / count,
        error_rate=Fraction(failures, count),
    )


def aggregate_scores(scores: list[InstanceScore]) -> dict[str, TaskSummary]:
    """Per-task summary table, tasks in sorted order."""
    if not scores:
        raise ValueError("cannot aggregate an empty score list")
    by_task: dict[str, list[InstanceScore]] = {}
    for score in scores:
        by_task.setdefault(score.problem_type, []).append(score)
    return {
        task: _summarize(task, group) for task, group in sorted(by_task.items())
    }


def overall_summary(scores: list[InstanceScore]) -> TaskSummary:
    if not scores:
        raise ValueError("cannot summarize an empty score list")
    return _summarize("all", scores)
