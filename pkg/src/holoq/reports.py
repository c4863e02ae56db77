"""Check reports, run configuration and deterministic output.

JSON output is canonical: keys sorted, checks sorted by id, timings kept out
of the body so reruns with the same config and seed are byte-identical except
for the timestamp in the meta block. Markdown output is for humans and does
include per-check wall-clock times.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction


def jsonable(x):
    """Render parameters and values into JSON-stable primitives."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return repr(x)


@dataclass
class CheckReport:
    """Outcome of one identity check.

    residual is None for exact (rational-arithmetic) checks; exact is None
    for purely numerical ones. scale records the normalization max(1, size
    of the largest intermediate) that the tolerance was applied against.
    """

    id: str
    equation: str
    params: dict = field(default_factory=dict)
    passed: bool = False
    exact: bool | None = None
    residual: float | None = None
    tol: float | None = None
    scale: float | None = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def body(self) -> dict:
        d = {
            "id": self.id,
            "equation": self.equation,
            "params": jsonable(self.params),
            "passed": self.passed,
        }
        if self.exact is not None:
            d["exact"] = self.exact
        if self.residual is not None:
            d["residual"] = self.residual
        if self.tol is not None:
            d["tol"] = self.tol
        if self.scale is not None:
            d["scale"] = self.scale
        if self.details:
            d["details"] = jsonable(self.details)
        return d


@dataclass
class QuantitiesReport:
    """Named computed quantities (coefficients, curvatures) for emission."""

    id: str
    values: dict = field(default_factory=dict)

    def body(self) -> dict:
        return {"id": self.id, "values": jsonable(self.values)}


@dataclass
class RunConfig:
    """Driver configuration; flags override file values field by field.

    n = None means each suite uses its own default range (3..12 for the
    exact sphere checks, {4, 6} for the torus grids); tol = None likewise
    keeps the per-suite tolerances.
    """

    suites: list = field(default_factory=lambda: ["all"])
    n: list | None = None
    nmax: int = 6
    grid: int = 64
    preset: str = "trig1"
    seed: int = 7
    lambdas: list = field(default_factory=lambda: ["0", "1/3", "5", "-2", "7/2"])
    tol: float | None = None
    out: str | None = None
    format: str = "both"
    instances: int = 200
    einstein_j: str | None = None
    phi_file: str | None = None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @staticmethod
    def from_dict(d: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(RunConfig)}
        bad = set(d) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        return RunConfig(**d)

    def merged(self, overrides: dict) -> "RunConfig":
        d = self.to_dict()
        for k, v in overrides.items():
            if v is not None:
                d[k] = v
        return RunConfig.from_dict(d)

    def lambda_values(self):
        return [Fraction(s) for s in self.lambdas]


def render_json(checks, config: RunConfig | None, timestamp: str,
                quantities=()) -> str:
    body = {
        "meta": {"timestamp": timestamp},
        "config": jsonable(config.to_dict()) if config is not None else None,
        "checks": [c.body() for c in sorted(checks, key=lambda c: c.id)],
    }
    if quantities:
        body["quantities"] = [q.body() for q in sorted(quantities, key=lambda q: q.id)]
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def _fmt_float(x):
    if x is None:
        return ""
    return f"{x:.3e}"


def render_markdown(checks, config: RunConfig | None, timestamp: str,
                    quantities=()) -> str:
    lines = ["# Verification report", "", f"Generated: {timestamp}", ""]
    if config is not None:
        lines += ["```json", json.dumps(jsonable(config.to_dict()), sort_keys=True), "```", ""]
    lines += [
        "| id | equation | residual | tol | status | seconds |",
        "|----|----------|----------|-----|--------|---------|",
    ]
    for c in sorted(checks, key=lambda c: c.id):
        status = "pass" if c.passed else "FAIL"
        res = "exact" if c.exact else _fmt_float(c.residual)
        lines.append(
            f"| {c.id} | {c.equation} | {res} | {_fmt_float(c.tol)} | {status} | {c.seconds:.3f} |"
        )
    if quantities:
        lines += ["", "## Quantities", ""]
        for q in sorted(quantities, key=lambda q: q.id):
            vals = ", ".join(f"{k} = {v}" for k, v in jsonable(q.values).items())
            lines.append(f"- {q.id}: {vals}")
    npass = sum(1 for c in checks if c.passed)
    lines += ["", f"{npass}/{len(checks)} checks passed", ""]
    return "\n".join(lines)


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)
