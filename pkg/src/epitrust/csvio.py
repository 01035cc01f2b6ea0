"""Bit-stable CSV emission.

All files are UTF-8 with LF line endings, a fixed header row, and reals
rendered with nine significant digits in their shortest form, so a rerun
with the same seed is byte-identical.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Sequence

AGENTS_HEADER = ("condition", "run", "step", "agent", "belief", "world_trust")
RUNS_HEADER = ("condition", "p_obj", "run", "step", "mean_belief", "belief_variance", "mean_world_trust")
SUMMARY_HEADER = ("condition", "p_obj", "step", "grand_mean_belief", "between_run_variance")
SCORES_HEADER = ("condition", "p_obj", "base_rate", "mean_brier", "mean_abs_error")


def fmt_value(value) -> str:
    """Canonical cell rendering: ints verbatim, reals at 9 significant digits."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def format_row(row: Sequence) -> str:
    return ",".join(fmt_value(v) for v in row) + "\n"


def emit_csv(records: Iterable[Sequence], path: Path, header: Sequence[str]) -> Path:
    """Write header plus rows atomically (temp file then rename).

    Rows are written in the order given; callers sort. Zero records yield
    a header-only file. Nothing is left behind on failure.
    """
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in records:
                fh.write(format_row(row))
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    return path
