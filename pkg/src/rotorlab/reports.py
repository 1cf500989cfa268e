"""Structured pass/fail reports and run configuration.

Reports render to a deterministic key = value text block per check, so an
identical (command, config, seed) triple always produces byte-identical
output.  The run configuration merges, in increasing priority: defaults,
a key=value config file, the ROTORLAB_SEED environment variable, and
explicit command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

__all__ = [
    "Report",
    "RunConfig",
    "SEED_ENV_VAR",
    "load_config",
    "render_reports",
    "all_pass",
]

SEED_ENV_VAR = "ROTORLAB_SEED"


@dataclass(frozen=True)
class Report:
    """One check: pass iff the maximum residual is within tolerance."""

    name: str
    residual: float
    tolerance: float
    seed: int = 0
    inputs: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.residual <= self.tolerance else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def render_reports(reports) -> str:
    """Deterministic text document, one [check] object per report."""
    blocks = []
    for r in reports:
        lines = [
            "[check]",
            f"name = {r.name}",
            f"status = {r.status}",
            f"residual = {_fmt(float(r.residual))}",
            f"tolerance = {_fmt(float(r.tolerance))}",
            f"seed = {r.seed}",
        ]
        for key in sorted(r.inputs):
            lines.append(f"inputs.{key} = {_fmt(r.inputs[key])}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def all_pass(reports) -> bool:
    return all(r.passed for r in reports)


@dataclass(frozen=True)
class RunConfig:
    M: float = 1.0
    ell: float = 1.0
    nu: float = 0.0
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    out: str = ""

    def __post_init__(self):
        if self.M <= 0.0 or self.ell <= 0.0:
            raise ValueError(f"M = {self.M} and ell = {self.ell} must be positive")

    def tolerance(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))


def _parse_value(key, raw):
    raw = raw.strip()
    if key == "seed":
        return int(raw)
    if key == "out":
        return raw
    return float(raw)


def load_config(path=None, overrides=None) -> RunConfig:
    """Defaults <- config file <- ROTORLAB_SEED <- explicit overrides."""
    data = {"tolerances": {}}
    if path:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected key = value")
                key, raw = (s.strip() for s in line.split("=", 1))
                if key.startswith("tolerance."):
                    data["tolerances"][key[len("tolerance."):]] = float(raw)
                else:
                    data[key] = _parse_value(key, raw)
    if SEED_ENV_VAR in os.environ:
        data["seed"] = int(os.environ[SEED_ENV_VAR])
    for key, val in (overrides or {}).items():
        if val is not None:
            data[key] = val
    return RunConfig(**data)
