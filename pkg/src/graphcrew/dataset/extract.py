"""Regex reference extractor for generated problem text.

This is the deterministic counterpart to the prose renderer: it knows
the fixed sentence shapes each scenario uses and pulls the roster, the
edges, and any route endpoints straight back out.  It exists for two
jobs: proving in tests that rendered text preserves the hidden graph,
and serving as a no-model baseline for the extraction stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..graph import Graph, Weight, build_graph
from .text import ROUTE_QUESTION_PATTERN, SCENARIO_STYLES


class ExtractionError(ValueError):
    """The text does not contain a recoverable problem."""


@dataclass(frozen=True)
class ExtractedProblem:
    graph: Graph
    source: str | None
    target: str | None


def _parse_number(token: str) -> Weight:
    if "/" in token:
        return Fraction(token)
    return int(token)


def reference_extract(text: str) -> ExtractedProblem:
    """Recover the graph hidden in rendered problem text.

    All scenario styles are tried; their sentence shapes are disjoint, so
    whichever one matches wins.  Unrecognized lines are ignored, which is
    the whole point: distractors and filler never match a fact pattern.
    """
    patterns = []
    for style in SCENARIO_STYLES.values():
        patterns.append((style.roster_pattern(),
                         style.edge_weighted_pattern(),
                         style.edge_unweighted_pattern()))

    roster: list[str] | None = None
    triples: list[tuple[str, str, Weight]] = []
    saw_weighted = False
    saw_unweighted = False

    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line:
            continue
        for roster_re, weighted_re, unweighted_re in patterns:
            match = roster_re.match(line)
            if match:
                roster = [part.strip() for part in match.group(1).split(",")]
                break
            match = weighted_re.match(line)
            if match:
                u, v, w = match.groups()
                triples.append((u, v, _parse_number(w)))
                saw_weighted = True
                break
            match = unweighted_re.match(line)
            if match:
                u, v = match.groups()
                triples.append((u, v, 1))
                saw_unweighted = True
                break

    if roster is None:
        raise ExtractionError("no roster sentence found")
    if saw_weighted and saw_unweighted:
        raise ExtractionError("mixed weighted and unweighted fact sentences")

    route = ROUTE_QUESTION_PATTERN.search(text)
    source = route.group(1) if route else None
    target = route.group(2) if route else None

    graph = build_graph(
        roster,
        directed=False,
        weighted=saw_weighted,
        edges=triples,
    )
    return ExtractedProblem(graph=graph, source=source, target=target)
