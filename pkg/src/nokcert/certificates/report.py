"""Versioned JSON report for a verification run.

Serialization is deterministic (no timestamp unless one is supplied, fixed key
order), so two runs with the same seed give byte-identical files.  Fields this
version does not know are carried through ``extra`` on a load/dump round trip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .. import __version__

REPORT_VERSION = "1.0"

_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "tool_version", "seed", "results", "status"],
    "properties": {
        "version": {"type": "string"},
        "tool_version": {"type": "string"},
        "timestamp": {"type": ["string", "null"]},
        "seed": {"type": "integer"},
        "status": {"enum": ["pass", "fail"]},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "holds", "volume_poly", "sup_enclosure", "margin_lower_bound", "notes"],
                "properties": {
                    "name": {"type": "string"},
                    "holds": {"type": "boolean"},
                    "verdict": {"type": "string"},
                    "volume_poly": {
                        "type": "object",
                        "additionalProperties": {"type": "array", "items": _RATIONAL},
                    },
                    "sup_enclosure": {"type": "array", "items": _RATIONAL, "minItems": 2, "maxItems": 2},
                    "margin_lower_bound": _RATIONAL,
                    "notes": {"type": "array", "items": {"type": "string"}},
                    "violations": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "structural": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "holds"],
                "properties": {"name": {"type": "string"}, "holds": {"type": "boolean"}},
            },
        },
    },
}

_KNOWN = ("version", "tool_version", "timestamp", "seed", "results", "structural", "status")


@dataclass
class VerificationReport:
    seed: int
    results: list[dict] = field(default_factory=list)
    structural: list[dict] = field(default_factory=list)
    timestamp: str | None = None
    version: str = REPORT_VERSION
    tool_version: str = __version__
    extra: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        ok = all(r["holds"] for r in self.results) and all(s["holds"] for s in self.structural)
        return "pass" if ok else "fail"

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "pass" else 1

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "version": self.version,
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
            "seed": self.seed,
            "results": self.results,
        }
        if self.structural:
            out["structural"] = self.structural
        out["status"] = self.status
        for k, v in self.extra.items():
            out.setdefault(k, v)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "VerificationReport":
        return cls(
            seed=int(doc["seed"]),
            results=list(doc.get("results", [])),
            structural=list(doc.get("structural", [])),
            timestamp=doc.get("timestamp"),
            version=str(doc.get("version", REPORT_VERSION)),
            tool_version=str(doc.get("tool_version", __version__)),
            extra={k: v for k, v in doc.items() if k not in _KNOWN},
        )

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))
