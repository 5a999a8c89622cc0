"""Deterministic CSV/JSON reports."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field


def fmt_float(x: float) -> str:
    s = f"{x:.12f}"
    # avoid a "-0.000000000000" that depends on rounding direction
    return "0.000000000000" if s.startswith("-") and float(s) == 0 else s


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, float):
        return float(fmt_float(v)) if v == v and abs(v) != float("inf") else str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return str(v)


@dataclass
class Report:
    command: str
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    provenance: list[dict] = field(default_factory=list)
    exclusions: list[str] = field(default_factory=list)
    failed: bool = False

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([_cell(r[c]) for c in self.columns])
        for k in sorted(self.summary):
            buf.write(f"# {k}: {_cell(self.summary[k])}\n")
        for e in self.exclusions:
            buf.write(f"# exclusion: {e}\n")
        for p in self.provenance:
            buf.write("# check: " + json.dumps(_jsonable(p), sort_keys=True) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "columns": self.columns,
            "rows": [_jsonable(r) for r in self.rows],
            "summary": _jsonable(self.summary),
            "provenance": [_jsonable(p) for p in self.provenance],
            "exclusions": list(self.exclusions),
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")
