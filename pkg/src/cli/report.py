from __future__ import annotations

import csv
import json
from pathlib import Path
import sys
from typing import Iterable, TextIO

from src.codes.correlate import AccfVector, PacfGrid
from src.codes.verify import Verdict

PACF_FIELDS = ["tau1", "tau2", "re", "im", "abs"]
ACCF_FIELDS = ["tau", "re", "im", "abs"]


def pacf_rows(grid: PacfGrid) -> list[dict[str, object]]:
    return [
        {"tau1": t1, "tau2": t2, "re": value.real, "im": value.imag, "abs": abs(value)}
        for (t1, t2), value in grid.items()
    ]


def accf_rows(vector: AccfVector) -> list[dict[str, object]]:
    return [
        {"tau": tau, "re": value.real, "im": value.imag, "abs": abs(value)}
        for tau, value in vector.items()
    ]


def write_csv(rows: Iterable[dict[str, object]], fieldnames: list[str], out: Path | None = None) -> None:
    """CSV to ``out`` or stdout."""
    handle: TextIO = out.open("w", newline="", encoding="utf-8") if out else sys.stdout
    try:
        writer = csv.DictWriter(handle, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out:
            handle.close()


def verdict_report(verdicts: Iterable[Verdict]) -> str:
    items = [verdict.to_dict() for verdict in verdicts]
    payload: object = items[0] if len(items) == 1 else items
    return json.dumps(payload, ensure_ascii=False, indent=2)
