"""Verification reports shared by the regularity checks, the operator
verifiers and the command line suites."""

import hashlib
import json
import math
from dataclasses import dataclass, field

__all__ = ["CaseRecord", "VerificationReport", "digest", "jsonable"]


def jsonable(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    if hasattr(value, "item"):
        return jsonable(value.item())
    return value


def digest(inputs):
    """Short stable hash of a case's inputs."""
    blob = json.dumps(jsonable(inputs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class CaseRecord:
    """One checked instance of an inequality ``lhs <= rhs``.

    ``margin`` is ``rhs - lhs``; records that only carry a measured value
    (regularity constants, sampled ratios) leave ``rhs`` and ``margin`` unset.
    """

    inputs: dict
    lhs: float
    rhs: float = None
    tol: float = 0.0
    margin: float = None
    quad_error: float = 0.0

    def __post_init__(self):
        if self.margin is None and self.rhs is not None:
            self.margin = self.rhs - self.lhs

    @property
    def passed(self):
        if self.margin is None:
            return math.isfinite(self.lhs)
        return self.margin >= -(self.tol + self.quad_error)

    def to_json(self):
        return {
            "inputs": jsonable(self.inputs),
            "digest": digest(self.inputs),
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "margin": jsonable(self.margin),
            "tol": self.tol,
            "quad_error": self.quad_error,
            "passed": self.passed,
        }


@dataclass
class VerificationReport:
    name: str
    anchor: str
    cases: list = field(default_factory=list)
    measured: float = None
    notes: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.cases) and all(self.checks.values())

    @property
    def min_margin(self):
        margins = [c.margin for c in self.cases if c.margin is not None]
        return min(margins) if margins else None

    def add(self, inputs, lhs, rhs=None, tol=0.0, quad_error=0.0, margin=None):
        rec = CaseRecord(inputs, float(lhs), None if rhs is None else float(rhs),
                         float(tol), margin, float(quad_error))
        self.cases.append(rec)
        return rec

    def to_json(self):
        return {
            "property": self.name,
            "anchor": self.anchor,
            "passed": self.passed,
            "n_cases": len(self.cases),
            "min_margin": jsonable(self.min_margin),
            "measured": jsonable(self.measured),
            "checks": dict(self.checks),
            "notes": jsonable(self.notes),
            "cases": [c.to_json() for c in self.cases],
        }

    def summary(self):
        flag = "PASS" if self.passed else "FAIL"
        extra = f" measured={self.measured:.6g}" if self.measured is not None else ""
        mm = self.min_margin
        mtxt = f" min_margin={mm:.3e}" if mm is not None else ""
        return f"[{flag}] {self.name}: {len(self.cases)} cases{mtxt}{extra}"
