"""Survey report container: rows, embedded expected values, mismatches."""

from __future__ import annotations

import csv
import io
import json
from importlib import resources

__all__ = ["SurveyReport", "load_expected"]


def load_expected(name: str):
    ref = resources.files("ks_atlas").joinpath(f"data/expected/{name}.json")
    with ref.open("r") as fh:
        return json.load(fh)


def _matches(expect, got) -> bool:
    if isinstance(expect, dict):
        if "le" in expect:
            return got is not None and got <= expect["le"]
        if "approx" in expect:
            return got is not None and abs(got - expect["approx"]) <= expect["tol"]
        raise ValueError(f"bad expectation {expect!r}")
    return expect == got


class SurveyReport:
    def __init__(self, preset: str, seed: int = 0):
        self.preset = preset
        self.seed = seed
        self.rows: list[dict] = []
        self.expected: list[dict] = []
        self.mismatches: list[dict] = []

    def add_row(self, row: dict, expected: dict | None = None):
        self.rows.append(row)
        self.expected.append(expected or {})
        if expected:
            for key, want in expected.items():
                got = row.get(key)
                if not _matches(want, got):
                    self.mismatches.append(
                        {"row": row.get("name", len(self.rows) - 1),
                         "field": key, "expected": want, "got": got})

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {
            "preset": self.preset,
            "seed": self.seed,
            "rows": self.rows,
            "expected": self.expected,
            "mismatches": self.mismatches,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1, sort_keys=True, default=str) + "\n"

    def to_csv(self) -> str:
        if not self.rows:
            return ""
        fields = []
        for row in self.rows:
            for k in row:
                if k not in fields:
                    fields.append(k)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: row.get(k, "") for k in fields})
        return buf.getvalue()

    def summary(self) -> str:
        lines = [f"preset {self.preset}: {len(self.rows)} rows, "
                 f"{'PASS' if self.passed else f'{len(self.mismatches)} MISMATCH'}"]
        for m in self.mismatches:
            lines.append(f"  {m['row']}.{m['field']}: expected {m['expected']}, got {m['got']}")
        return "\n".join(lines)
