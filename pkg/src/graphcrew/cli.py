"""Command-line front end: generate, solve, evaluate, solve-direct.

Exit codes are part of the contract: 0 for success, 1 when some
instances failed to solve, 2 for configuration problems.  Offline runs
(stub or replay backends) are byte-reproducible end to end; the only
secret a live backend ever sees is its API key, read from the
environment variable named in the backend config, never from a flag.
"""

from __future__ import annotations

import functools
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from .agents import (
    BackendConfig,
    BackendError,
    ConfigError,
    DirectOutcome,
    PipelineConfig,
    PipelineError,
    PriceConfig,
    load_backend_config,
    make_backend,
    run_direct,
    run_pipeline,
)
from .dataset import (
    DatasetSpec,
    dataset_manifest,
    generate_dataset,
    read_instances,
    write_instances,
    write_text_only,
)
from .evaluation import (
    RateConfig,
    aggregate_scores,
    cost_report,
    overall_summary,
    render_accuracy_table,
    render_cost_table,
    score_failure,
    score_prediction,
    scores_to_records,
)
from .knowledge import KnowledgeBaseError, load_knowledge_base
from .problems import (
    CYCLE_DETECTION,
    GRAPH_COLORING,
    NOISE_LEVELS,
    PROBLEM_TYPES,
    SCENARIOS,
    SHORTEST_PATH,
    TSP,
    VERTEX_COVER,
)
from .solvers import solution_from_dict, solution_to_dict

# the default sweep; cycle detection is opt-in via --type
DEFAULT_TYPES = (TSP, GRAPH_COLORING, VERTEX_COVER, SHORTEST_PATH)


def _config_guard(fn):
    """Turn configuration mistakes into exit code 2 with a clean message."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ConfigError, KnowledgeBaseError) as exc:
            click.echo(f"configuration error: {exc}", err=True)
            sys.exit(2)
        except ValueError as exc:
            click.echo(f"configuration error: {exc}", err=True)
            sys.exit(2)

    return wrapper


@click.group()
def main() -> None:
    """Graph problem workbench: generate datasets, solve them, score runs."""


def _parse_sizes(text: str) -> tuple[int, int]:
    parts = text.split("-")
    try:
        if len(parts) == 1:
            low = high = int(parts[0])
        elif len(parts) == 2:
            low, high = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise click.UsageError(f"--sizes wants N or LO-HI, got {text!r}") from None
    return low, high


@main.command("generate")
@click.option("--type", "types", multiple=True, type=click.Choice(PROBLEM_TYPES),
              help="Problem family to generate; repeatable. Default: the four standard families.")
@click.option("--sizes", default="8-25", show_default=True,
              help="Node-count range, as LO-HI or a single N.")
@click.option("--per-size", default=50, show_default=True, help="Instances per node count.")
@click.option("--seed", default=7, show_default=True, help="Master seed; all randomness flows from it.")
@click.option("--noise", default="standard", show_default=True,
              type=click.Choice(NOISE_LEVELS), help="How much irrelevant prose to add.")
@click.option("--scenario", default=None, type=click.Choice(sorted(SCENARIOS)),
              help="Cover story; default picks one per problem family.")
@click.option("--out", default="dataset", show_default=True,
              type=click.Path(file_okay=False, path_type=Path), help="Output directory.")
@click.option("--workers", default=1, show_default=True, help="Parallel generation processes.")
@_config_guard
def cmd_generate(types, sizes, per_size, seed, noise, scenario, out, workers):
    """Generate seeded datasets with hidden ground truth."""
    low, high = _parse_sizes(sizes)
    chosen = types or DEFAULT_TYPES
    out.mkdir(parents=True, exist_ok=True)

    entries = []
    for problem_type in chosen:
        spec = DatasetSpec(
            problem_type=problem_type,
            master_seed=seed,
            min_nodes=low,
            max_nodes=high,
            instances_per_size=per_size,
            noise_level=noise,
            scenario=scenario,
        )
        instances = generate_dataset(spec, workers=workers)
        instance_path = out / f"{problem_type}.jsonl"
        write_instances(instances, instance_path)
        write_text_only(instances, out / f"{problem_type}.text.jsonl")
        entry = dataset_manifest(spec, instance_path)
        entries.append(entry)
        click.echo(f"{entry['sha256']}  {instance_path.name}  ({entry['instance_count']} instances)")

    manifest_path = out / "manifest.json"
    manifest_path.write_text(
        json.dumps({"datasets": entries}, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    click.echo(f"manifest written to {manifest_path}")


def _load_kb(path: Path | None):
    if path is None:
        return None
    return load_knowledge_base(path.read_text(encoding="utf-8"))


def _needs_hidden(config: BackendConfig) -> bool:
    if config.kind == "stub":
        return True
    return config.inner is not None and _needs_hidden(config.inner)


def _usage_rows(calls) -> list[dict]:
    return [
        {
            "stage": call.stage,
            "attempt": call.attempt,
            "input_tokens": call.input_tokens,
            "output_tokens": call.output_tokens,
        }
        for call in calls
    ]


def _dump(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def _write_lines(lines: list[str], path: Path) -> None:
    path.write_text("\n".join(lines) + "\n" if lines else "", encoding="utf-8")


@main.command("solve")
@click.option("--dataset", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Instances file (JSONL) to solve.")
@click.option("--backend-config", "backend_config_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Backend YAML config.")
@click.option("--kb", "kb_path", default=None,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Algorithm catalogue YAML; default uses the bundled one.")
@click.option("--n-check", default=2, show_default=True, help="Self-check rounds after solving.")
@click.option("--concurrency", default=4, show_default=True, help="Parallel instances in flight.")
@click.option("--out", default=Path("results.jsonl"), show_default=True,
              type=click.Path(dir_okay=False, path_type=Path), help="Results file to write.")
@_config_guard
def cmd_solve(dataset, backend_config_path, kb_path, n_check, concurrency, out):
    """Run the staged pipeline over a dataset."""
    if n_check < 0:
        raise click.UsageError("--n-check must be >= 0")
    instances = read_instances(dataset)
    backend_config = load_backend_config(backend_config_path)
    kb = _load_kb(kb_path)
    pipeline_config = PipelineConfig(kb=kb, n_check=n_check)

    shared_backend = None
    if not _needs_hidden(backend_config):
        shared_backend = make_backend(backend_config, kb=kb)

    def solve_one(instance):
        if shared_backend is not None:
            backend = shared_backend
        else:
            backend = make_backend(
                backend_config, hidden=instance.hidden_payload(), kb=kb
            )
        record = {"id": instance.instance_id, "problem_type": instance.problem_type}
        try:
            outcome = run_pipeline(backend, instance.text, pipeline_config)
        except PipelineError as exc:
            record["status"] = "failed"
            record["failure"] = str(exc)
            record["stage"] = exc.stage
            record["usage"] = _usage_rows(getattr(exc, "partial_calls", ()))
            return record
        except BackendError as exc:
            record["status"] = "failed"
            record["failure"] = str(exc)
            record["stage"] = "backend"
            record["usage"] = []
            return record
        record["status"] = "ok"
        record["solution"] = solution_to_dict(outcome.solution)
        record["algorithm"] = outcome.solution.algorithm_id
        record["explanation"] = outcome.explanation
        record["notes"] = list(outcome.notes)
        record["usage"] = _usage_rows(outcome.calls)
        return record

    if concurrency > 1:
        with ThreadPoolExecutor(max_workers=concurrency) as pool:
            records = list(pool.map(solve_one, instances))
    else:
        records = [solve_one(instance) for instance in instances]

    _write_lines([_dump(r) for r in records], out)
    failed = sum(1 for r in records if r["status"] != "ok")
    click.echo(f"solved {len(records) - failed}/{len(records)} instances -> {out}")
    if failed:
        click.echo(f"{failed} instances failed", err=True)
        sys.exit(1)


@main.command("solve-direct")
@click.option("--dataset", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--backend-config", "backend_config_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--mode", default="direct", show_default=True,
              type=click.Choice(("direct", "cot")),
              help="Single-prompt baseline; cot prepends the step-by-step directive.")
@click.option("--concurrency", default=4, show_default=True)
@click.option("--out", default=Path("results_direct.jsonl"), show_default=True,
              type=click.Path(dir_okay=False, path_type=Path))
@_config_guard
def cmd_solve_direct(dataset, backend_config_path, mode, concurrency, out):
    """Ask for the answer in one prompt, no pipeline; the baseline condition."""
    instances = read_instances(dataset)
    backend_config = load_backend_config(backend_config_path)

    shared_backend = None
    if not _needs_hidden(backend_config):
        shared_backend = make_backend(backend_config)

    def solve_one(instance):
        if shared_backend is not None:
            backend = shared_backend
        else:
            backend = make_backend(backend_config, hidden=instance.hidden_payload())
        outcome: DirectOutcome = run_direct(backend, instance.text, mode=mode)
        record = {
            "id": instance.instance_id,
            "problem_type": instance.problem_type,
            "mode": mode,
        }
        if outcome.solution is not None:
            record["status"] = "ok"
            record["solution"] = solution_to_dict(outcome.solution)
        else:
            record["status"] = "failed"
            record["failure"] = outcome.failure
        record["usage"] = _usage_rows(outcome.calls)
        return record

    if concurrency > 1:
        with ThreadPoolExecutor(max_workers=concurrency) as pool:
            records = list(pool.map(solve_one, instances))
    else:
        records = [solve_one(instance) for instance in instances]

    _write_lines([_dump(r) for r in records], out)
    failed = sum(1 for r in records if r["status"] != "ok")
    click.echo(f"answered {len(records) - failed}/{len(records)} instances -> {out}")
    if failed:
        click.echo(f"{failed} instances failed", err=True)
        sys.exit(1)


@main.command("evaluate")
@click.option("--results", "results_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Results file from solve or solve-direct.")
@click.option("--dataset", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="The instances the results were produced from.")
@click.option("--backend-config", "backend_config_path", default=None,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Backend config; its price section sets the cost rates.")
@click.option("--out", "out_dir", default=None,
              type=click.Path(file_okay=False, path_type=Path),
              help="Report directory; default is next to the results file.")
@_config_guard
def cmd_evaluate(results_path, dataset, backend_config_path, out_dir):
    """Score results against hidden truth and account for token costs."""
    instances = {inst.instance_id: inst for inst in read_instances(dataset)}
    if backend_config_path is not None:
        prices = load_backend_config(backend_config_path).prices
    else:
        prices = PriceConfig()
    rates = RateConfig.from_prices(prices)

    scores = []
    trails: dict[str, list] = {}
    any_usage = False
    for lineno, line in enumerate(
        results_path.read_text(encoding="utf-8").splitlines(), 1
    ):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{results_path}: line {lineno}: {exc}") from exc
        instance = instances.get(record.get("id"))
        if instance is None:
            raise ConfigError(
                f"{results_path}: line {lineno}: result for unknown instance {record.get('id')!r}"
            )
        if instance.truth is None or instance.graph is None:
            raise ConfigError(
                f"instance {instance.instance_id} carries no ground truth; "
                "evaluate needs the full (non text-only) dataset file"
            )
        if record.get("status") == "ok":
            prediction = solution_from_dict(record["solution"])
            scores.append(score_prediction(
                prediction,
                instance.truth.optimal,
                instance.problem_type,
                instance.graph,
                source=instance.source,
                target=instance.target,
                instance_id=instance.instance_id,
            ))
        else:
            scores.append(score_failure(
                instance.instance_id,
                instance.problem_type,
                record.get("failure") or "solve failed",
            ))
        usage = record.get("usage") or []
        if usage:
            any_usage = True
        trails[instance.instance_id] = [
            _UsageCall(u["stage"], u.get("attempt", 1), u["input_tokens"], u["output_tokens"])
            for u in usage
        ]

    if not scores:
        raise ConfigError(f"{results_path} holds no results")

    summaries = aggregate_scores(scores)
    overall = overall_summary(scores)
    accuracy_text = render_accuracy_table(summaries, overall)
    sections = [accuracy_text]
    if any_usage:
        sections.append(render_cost_table(cost_report(trails, rates)))
    report_text = "\n\n".join(sections) + "\n"

    out_dir = out_dir or results_path.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_lines([_dump(r) for r in scores_to_records(scores)], out_dir / "scores.jsonl")
    (out_dir / "report.txt").write_text(report_text, encoding="utf-8")
    click.echo(report_text.rstrip("\n"))
    click.echo(f"reports written to {out_dir}")


class _UsageCall:
    """Minimal stand-in for a call record when only token counts survive."""

    __slots__ = ("stage", "attempt", "input_tokens", "output_tokens")

    def __init__(self, stage: str, attempt: int, input_tokens: int, output_tokens: int):
        self.stage = stage
        self.attempt = attempt
        self.input_tokens = input_tokens
        self.output_tokens = output_tokens


if __name__ == "__main__":
    main()
