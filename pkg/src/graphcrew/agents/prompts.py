"""Prompt templates: one file per stage, system and user parts split by ---.

Each system part opens with a ``[stage:<name>]`` marker line.  The marker
is harmless context for a live model and lets the offline oracle backend
know which stage is talking to it.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

STAGES: tuple[str, ...] = (
    "narrative",
    "classify",
    "extract_graph",
    "normalize",
    "select",
    "audit",
    "direct",
)

_MARKER_RE = re.compile(r"\[stage:([a-z_]+)\]")


class TemplateError(ValueError):
    pass


def _read_template(stage: str, template_dir: str | None) -> str:
    if template_dir is not None:
        path = Path(template_dir) / f"{stage}.txt"
        if not path.is_file():
            raise TemplateError(f"no template for stage {stage!r} in {template_dir}")
        return path.read_text()
    return resources.files("graphcrew").joinpath(f"agents/templates/{stage}.txt").read_text()


@lru_cache(maxsize=None)
def load_template(stage: str, template_dir: str | None = None) -> tuple[str, str]:
    """(system, user) template pair for a stage."""
    if stage not in STAGES:
        raise TemplateError(f"unknown stage {stage!r} (known: {', '.join(STAGES)})")
    text = _read_template(stage, template_dir)
    parts = text.split("\n---\n", 1)
    if len(parts) != 2:
        raise TemplateError(f"template for {stage!r} lacks the --- separator")
    return parts[0].strip(), parts[1].strip()


def render_stage(
    stage: str, slots: dict[str, str], template_dir: str | None = None
) -> tuple[str, str]:
    """Fill a stage's user template; unknown or leftover slots are errors."""
    system, user = load_template(stage, template_dir)
    for key, value in slots.items():
        token = "{" + key + "}"
        if token not in user:
            raise TemplateError(f"template for {stage!r} has no slot {token}")
        user = user.replace(token, value)
    leftover = re.search(r"\{[a-z_]+\}", user)
    if leftover:
        raise TemplateError(f"slot {leftover.group(0)} of {stage!r} was not filled")
    return system, user


def cot_directive(template_dir: str | None = None) -> str:
    if template_dir is not None:
        path = Path(template_dir) / "cot_directive.txt"
        if path.is_file():
            return path.read_text().strip()
    return (
        resources.files("graphcrew")
        .joinpath("agents/templates/cot_directive.txt")
        .read_text()
        .strip()
    )


def stage_of_prompt(system_prompt: str) -> str | None:
    """Recover the stage marker from a system prompt, if present."""
    match = _MARKER_RE.search(system_prompt)
    return match.group(1) if match else None
