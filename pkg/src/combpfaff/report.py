"""Verification reports and their JSON schema."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .ring import ratfun_eq

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["theorem", "inputs", "lhs", "rhs", "passed", "seconds", "details"],
    "additionalProperties": False,
    "properties": {
        "theorem": {"type": "string"},
        "inputs": {"type": "object"},
        "lhs": {"type": "string"},
        "rhs": {"type": "string"},
        "passed": {"type": "boolean"},
        "seconds": {"type": "number", "minimum": 0},
        "details": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "lhs", "rhs", "passed"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "lhs": {"type": "string"},
                    "rhs": {"type": "string"},
                    "passed": {"type": "boolean"},
                },
            },
        },
    },
}

REPORT_LIST_SCHEMA = {"type": "array", "items": REPORT_SCHEMA}


@dataclass
class SubCheck:
    name: str
    lhs: str
    rhs: str
    passed: bool

    def to_dict(self):
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "passed": self.passed}


@dataclass
class VerificationReport:
    theorem: str
    inputs: dict
    lhs: str
    rhs: str
    passed: bool
    seconds: float = 0.0
    details: list = field(default_factory=list)
    lhs_value: object = field(default=None, repr=False, compare=False)
    rhs_value: object = field(default=None, repr=False, compare=False)

    @classmethod
    def compare(cls, theorem, inputs, lhs, rhs, details=(), seconds=0.0):
        """Pass iff lhs and rhs agree as rational functions and every detail passes."""
        details = list(details)
        ok = bool(ratfun_eq(lhs, rhs)) and all(d.passed for d in details)
        return cls(theorem, _jsonable(inputs), str(lhs), str(rhs), ok, seconds, details, lhs, rhs)

    def to_dict(self):
        return {
            "theorem": self.theorem,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "passed": self.passed,
            "seconds": round(self.seconds, 6),
            "details": [d.to_dict() for d in self.details],
        }

    def to_text(self):
        mark = "PASS" if self.passed else "FAIL"
        lines = [f"[{mark}] {self.theorem}  {json.dumps(self.inputs, sort_keys=True)}",
                 f"    lhs = {self.lhs}",
                 f"    rhs = {self.rhs}"]
        for d in self.details:
            lines.append(f"    {'ok ' if d.passed else 'BAD'} {d.name}: {d.lhs}  vs  {d.rhs}")
        lines.append(f"    ({self.seconds:.3f} s)")
        return "\n".join(lines)


def sub_check(name, lhs, rhs):
    return SubCheck(name, str(lhs), str(rhs), bool(ratfun_eq(lhs, rhs)))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


@contextmanager
def timed():
    box = {"seconds": 0.0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["seconds"] = time.perf_counter() - t0
