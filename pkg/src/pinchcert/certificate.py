"""Certificate and obligation values with a JSON round trip."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from pinchcert.multipoly import MultiPoly

__all__ = ["KINDS", "Certificate", "Obligation", "check_identity"]

KINDS = (
    "identity",
    "resultant-match",
    "discriminant-match",
    "positivity",
    "root-count",
    "numeric-margin",
    "dependency",
)


@dataclass
class Obligation:
    desc: str
    kind: str
    status: str
    paper_anchor: str = ""
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown obligation kind {self.kind!r}")
        if self.status not in ("pass", "fail"):
            raise ValueError(f"status must be 'pass' or 'fail', not {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "desc": self.desc,
            "kind": self.kind,
            "status": self.status,
            "paper_anchor": self.paper_anchor,
            "data": self.data,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Obligation":
        return cls(d["desc"], d["kind"], d["status"], d.get("paper_anchor", ""), d.get("data", {}))


@dataclass
class Certificate:
    name: str
    obligations: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)

    @property
    def overall(self) -> str:
        return "pass" if self.obligations and all(o.passed for o in self.obligations) else "fail"

    @property
    def passed(self) -> bool:
        return self.overall == "pass"

    def add(self, ob: Obligation) -> Obligation:
        self.obligations.append(ob)
        return ob

    def extend(self, obs) -> None:
        self.obligations.extend(obs)

    def failures(self) -> list:
        return [o for o in self.obligations if not o.passed]

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "name": self.name,
            "obligations": [o.to_dict() for o in self.obligations],
            "overall": self.overall,
        }
        if self.assumptions:
            d["assumptions"] = list(self.assumptions)
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        cert = cls(d["name"], [Obligation.from_dict(o) for o in d["obligations"]], list(d.get("assumptions", [])))
        if d.get("overall", cert.overall) != cert.overall:
            raise ValueError(f"certificate {d['name']!r}: stored overall status disagrees with obligations")
        return cert

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, Certificate):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def summary(self) -> str:
        lines = [f"certificate {self.name}: {self.overall.upper()}"]
        for i, o in enumerate(self.obligations, 1):
            lines.append(f"  {i:2d}. [{o.status:4s}] {o.kind:18s} {o.desc}")
        for a in self.assumptions:
            lines.append(f"      assumption: {a}")
        return "\n".join(lines)


def check_identity(p: MultiPoly, q: MultiPoly, desc: str = "polynomial identity", anchor: str = "") -> Obligation:
    """Pass iff ``p - q`` is the zero polynomial; both sides are stored canonically."""
    diff = p - q
    return Obligation(
        desc,
        "identity",
        "pass" if diff.is_zero() else "fail",
        anchor,
        {"lhs": str(p), "rhs": str(q), "difference": str(diff)},
    )
