"""Verification reports and their CSV / JSON serialisation.

Every inequality check in the toolkit produces a VerificationReport that
records both sides of the inequality, the constant used, a pass flag and a
witness.  Reports are serialised deterministically: floats are printed
with 17 significant digits and JSON keys are sorted, so identical runs
produce byte-identical files.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Any, Iterable


def fmt17(x: float) -> str:
    """Format a float with 17 significant digits (round-trip exact)."""
    return format(float(x), ".17g")


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, float):
        return float(fmt17(obj))
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return _jsonable(obj.item())
    return obj


def canonical_json(obj: Any) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


@dataclass
class VerificationReport:
    """Outcome of one inequality check: lhs <= constant-scaled rhs."""

    check_id: str
    params: dict[str, Any]
    lhs: float
    rhs: float
    constant: float
    passed: bool
    witness: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def require(self) -> "VerificationReport":
        """Raise if the check failed; convenient in tests."""
        if not self.passed:
            raise AssertionError(
                f"check {self.check_id} failed: lhs={fmt17(self.lhs)} "
                f"rhs={fmt17(self.rhs)} params={self.params}")
        return self


CSV_HEADER = "check_id,params_json,lhs,rhs,constant_used,pass,witness_json"


def _csv_quote(text: str) -> str:
    if any(c in text for c in ",\"\n"):
        return '"' + text.replace('"', '""') + '"'
    return text


def reports_to_csv(reports: Iterable[VerificationReport]) -> str:
    """Render reports as a deterministic CSV document (LF line endings)."""
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for r in reports:
        row = [
            r.check_id,
            _csv_quote(canonical_json(r.params)),
            fmt17(r.lhs),
            fmt17(r.rhs),
            fmt17(r.constant),
            "true" if r.passed else "false",
            _csv_quote(canonical_json(r.witness) if r.witness is not None else ""),
        ]
        out.write(",".join(row) + "\n")
    return out.getvalue()


def summary_json(reports: Iterable[VerificationReport]) -> str:
    """JSON summary with pass counts per suite (check_id prefix)."""
    counts: dict[str, dict[str, int]] = {}
    for r in reports:
        suite = r.check_id.split("/")[0]
        bucket = counts.setdefault(suite, {"pass": 0, "fail": 0})
        bucket["pass" if r.passed else "fail"] += 1
    total = {"pass": sum(c["pass"] for c in counts.values()),
             "fail": sum(c["fail"] for c in counts.values())}
    return canonical_json({"suites": counts, "total": total})
