"""Workbench for natural-language graph problems.

The package splits into five subsystems that share one canonical graph
representation:

- ``dataset``: seeded generators that hide a known graph inside prose,
  plus the reference extractor that recovers it.
- ``solvers``: native exact and heuristic algorithms over that graph type.
- ``knowledge``: the algorithm catalogue and the deterministic selector.
- ``agents``: the staged chat pipeline that turns prose into a solved,
  verified answer via a pluggable backend.
- ``evaluation``: exact-arithmetic scoring and token cost accounting.
"""

__version__ = "0.1.0"
