"""Run configuration and the JSON / CSV report formats."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .constants import CODATA2018, DomainError, PhysicalConstants

SCHEMA_VERSION = 1
CONFIG_ENV = "PHOTON_SOLITON_CONFIG"

DEFAULT_TOLERANCES = {
    "maxwell": 1e-6,
    "dalembert": 1e-6,
    "eigen": 1e-8,
    "betaz_ratio": 1e3,
    "ode": 1e-12,
    "quadrature_rel": 5e-3,
}


@dataclass
class RunConfig:
    """Settings shared by every CLI command.

    ``fd_step`` and ``fd_time_step`` are fractions of the wavelength and of
    the period respectively.
    """

    constants: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    quadrature_budget: int = 10_000
    fd_step: float = 1e-4
    fd_time_step: float = 1e-4
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self):
        tol = dict(DEFAULT_TOLERANCES)
        tol.update(self.tolerances or {})
        self.tolerances = tol
        self.validate()

    def validate(self):
        for name, value in self.tolerances.items():
            if not float(value) > 0:
                raise DomainError(f"tolerance {name!r} must be > 0, got {value!r}")
        if int(self.quadrature_budget) < 10_000:
            raise DomainError(f"quadrature_budget must be >= 10000, got {self.quadrature_budget!r}")
        if not (self.fd_step > 0 and self.fd_time_step > 0):
            raise DomainError("finite-difference steps must be > 0")
        if int(self.seed) < 0:
            raise DomainError("seed must be a non-negative integer")
        if self.output_format not in ("json", "csv"):
            raise DomainError(f"output_format must be json or csv, got {self.output_format!r}")
        self.physical_constants()

    def physical_constants(self) -> PhysicalConstants:
        return CODATA2018.with_overrides(**{k: float(v) for k, v in self.constants.items()})

    def as_dict(self) -> dict:
        return asdict(self)


def _coerce(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def parse_config_text(text: str) -> dict:
    """JSON object, or ``key=value`` lines with dotted keys for nested maps."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return json.loads(stripped)
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line {lineno}: expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if "." in key:
            head, tail = key.split(".", 1)
            out.setdefault(head, {})[tail] = _coerce(value)
        else:
            out[key] = _coerce(value)
    return out


def load_config(path: str | os.PathLike | None = None, **overrides) -> RunConfig:
    """Build a `RunConfig` from ``path`` (or ``$PHOTON_SOLITON_CONFIG``) plus overrides."""
    data: dict = {}
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        data = parse_config_text(Path(path).read_text(encoding="utf-8"))
    unknown = set(data) - set(RunConfig.__dataclass_fields__)
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    for key, value in overrides.items():
        if value is None:
            continue
        if key in ("constants", "tolerances"):
            data.setdefault(key, {}).update(value)
        else:
            data[key] = value
    return RunConfig(**data)


def jsonable(obj):
    """Recursively convert records, numpy scalars and complex numbers."""
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    return obj


@dataclass
class ReportEnvelope:
    command: str
    config: dict
    records: list
    checks: dict = field(default_factory=dict)
    timestamp: str | None = None

    @property
    def passed(self) -> bool:
        return all(bool(v) for v in self.checks.values())

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "command": self.command,
            "timestamp": self.timestamp,
            "config": self.config,
            "checks": self.checks,
            "pass": self.passed,
            "records": self.records,
        }

    def to_json(self) -> str:
        return json.dumps(jsonable(self), indent=1, sort_keys=False) + "\n"


def now_utc() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def fmt(value) -> str:
    """Scientific notation with 12 significant digits."""
    return f"{float(value):.11e}"


def csv_table(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, int, np.floating)) and not isinstance(v, bool) else v
                    for v in row])
    return buf.getvalue()


def records_csv(records) -> str:
    rows = [(r.name, r.value, r.units, r.formula, r.model) for r in records]
    return csv_table(("name", "value", "units", "formula", "model"), rows)


def sweep_csv(params, records) -> str:
    return csv_table(("param", "value", "units"), [(p, r.value, r.units) for p, r in zip(params, records)])


def write_output(text: str, out: str | None):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        import sys
        sys.stdout.write(text)
