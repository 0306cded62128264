"""Structured verdicts emitted by the theorem verifiers.

A certificate is the conjunction of named sub-claims, each carrying its
witnesses (elements, ideals, Betti data) in canonical text form, plus the
list of trusted assumptions it consumed (declared minimal primes,
reducedness).  Serialization uses stable field names so downstream tools
can rely on the schema.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

CERTIFICATE_SCHEMA = 1


@dataclass
class SubClaim:
    name: str
    passed: Optional[bool]  # None marks informational entries
    witnesses: Dict[str, object] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "witnesses": _canonical(self.witnesses),
        }


@dataclass
class Certificate:
    claim: str
    context: Dict[str, object] = field(default_factory=dict)
    subclaims: List[SubClaim] = field(default_factory=list)
    trusted_assumptions: List[str] = field(default_factory=list)
    applicable: bool = True
    inapplicable_reason: Optional[str] = None

    def check(self, name: str, passed: bool, **witnesses) -> bool:
        self.subclaims.append(SubClaim(name, bool(passed), dict(witnesses)))
        return bool(passed)

    def info(self, name: str, **witnesses) -> None:
        self.subclaims.append(SubClaim(name, None, dict(witnesses)))

    def mark_inapplicable(self, reason: str) -> "Certificate":
        self.applicable = False
        self.inapplicable_reason = reason
        return self

    @property
    def passed(self) -> bool:
        return self.applicable and all(
            sc.passed is not False for sc in self.subclaims
        )

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return "inapplicable"
        return "pass" if self.passed else "fail"

    def failed_subclaims(self) -> List[str]:
        return [sc.name for sc in self.subclaims if sc.passed is False]

    def to_json_dict(self) -> dict:
        return {
            "schema": CERTIFICATE_SCHEMA,
            "claim": self.claim,
            "verdict": self.verdict,
            "applicable": self.applicable,
            "inapplicable_reason": self.inapplicable_reason,
            "context": _canonical(self.context),
            "subclaims": [sc.to_json_dict() for sc in self.subclaims],
            "trusted_assumptions": sorted(self.trusted_assumptions),
        }

    def summary(self) -> str:
        status = self.verdict
        if status == "fail":
            status += " (" + ", ".join(self.failed_subclaims()) + ")"
        return f"{self.claim}: {status}"


def _canonical(value):
    if isinstance(value, dict):
        return {str(k): _canonical(value[k]) for k in sorted(value, key=str)}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    if isinstance(value, float) and value == float("inf"):
        return "infinite"
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    return str(value)
