"""Verification reports and their frozen serialization schema."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

# Column order is frozen; downstream diff/plot scripts rely on it.
CSV_COLUMNS = ("name", "q", "label", "params", "measured", "bound", "margin", "pass")


@dataclass
class VerificationReport:
    """One named check: what was measured, the target, and the margin.

    ``passed`` is None for honesty outcomes that are neither pass nor fail
    (e.g. a region check whose region does not meet the evaluation window);
    ``status`` then carries the reason.
    """

    name: str
    params: dict = field(default_factory=dict)
    measured: float | int | None = None
    bound: float | int | None = None
    margin: float | None = None
    passed: bool | None = None
    status: str = ""
    runtime: float = 0.0
    skipped_points: int = 0

    @property
    def q(self):
        return self.params.get("q")

    @property
    def label(self):
        return self.params.get("label")

    def to_dict(self, with_runtime: bool = False) -> dict:
        d = {
            "name": self.name,
            "params": dict(sorted(self.params.items())),
            "measured": self.measured,
            "bound": self.bound,
            "margin": self.margin,
            "pass": self.passed,
        }
        if self.status:
            d["status"] = self.status
        if self.skipped_points:
            d["skipped_points"] = self.skipped_points
        if with_runtime:
            d["runtime"] = round(self.runtime, 3)
        return d

    def to_json(self, with_runtime: bool = False) -> str:
        return json.dumps(self.to_dict(with_runtime), sort_keys=True)

    def csv_row(self) -> list[str]:
        extras = ";".join(
            f"{k}={v}" for k, v in sorted(self.params.items()) if k not in ("q", "label")
        )
        fmt = lambda x: "" if x is None else repr(float(x)) if isinstance(x, float) else str(x)
        return [
            self.name,
            fmt(self.params.get("q")),
            fmt(self.params.get("label")),
            extras,
            fmt(self.measured),
            fmt(self.bound),
            fmt(self.margin),
            {True: "true", False: "false", None: "skip"}[self.passed],
        ]
