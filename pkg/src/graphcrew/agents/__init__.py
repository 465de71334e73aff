"""Staged chat pipeline, its backends, and the single-call baseline."""

from .backends import (
    BackendConfig,
    BackendError,
    ChatBackend,
    Completion,
    ConfigError,
    LiveChatBackend,
    OracleStubBackend,
    PriceConfig,
    RecordingBackend,
    ReplayBackend,
    Usage,
    load_backend_config,
    make_backend,
    whitespace_token_count,
)
from .blocks import extract_block, format_block, parse_fields
from .direct import DirectOutcome, run_direct
from .pipeline import (
    CallRecord,
    EmptyGraphError,
    ParseFailureError,
    PipelineConfig,
    PipelineError,
    ProblemSpec,
    SolveOutcome,
    SolverError,
    UnsupportedProblemTypeError,
    VerificationFailedError,
    choose_algorithm,
    classify_problem,
    execute_and_check,
    extract_narrative,
    extract_raw_graph,
    normalize_graph,
    run_pipeline,
)

__all__ = [
    "BackendConfig",
    "BackendError",
    "CallRecord",
    "ChatBackend",
    "Completion",
    "ConfigError",
    "DirectOutcome",
    "EmptyGraphError",
    "LiveChatBackend",
    "OracleStubBackend",
    "PriceConfig",
    "ParseFailureError",
    "PipelineConfig",
    "PipelineError",
    "ProblemSpec",
    "RecordingBackend",
    "ReplayBackend",
    "SolveOutcome",
    "SolverError",
    "UnsupportedProblemTypeError",
    "Usage",
    "VerificationFailedError",
    "choose_algorithm",
    "classify_problem",
    "execute_and_check",
    "extract_block",
    "extract_narrative",
    "extract_raw_graph",
    "format_block",
    "load_backend_config",
    "make_backend",
    "normalize_graph",
    "parse_fields",
    "run_direct",
    "run_pipeline",
    "whitespace_token_count",
]
