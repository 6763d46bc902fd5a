"""Knot concordance invariants and definite-sliceness obstructions."""

from __future__ import annotations

from typing import Any


def run_report(*args: Any, **kwargs: Any) -> Any:
    """Lazily import and execute the report pipeline."""
    from knotconc.graph import run_report as _run_report

    return _run_report(*args, **kwargs)


__all__ = ["run_report"]
