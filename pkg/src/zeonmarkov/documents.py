"""Input and output documents: matrix files and analysis reports.

Matrices travel as JSON ({"label": ..., "rows": [[...]]}) or CSV (one row
per line). Rational literals are exact strings ("7/16", "0.25", "3");
JSON integers work too, and JSON decimal numbers are parsed from their
decimal text, never through a binary float. Reports serialize every
rational as an exact string so that parsing a serialized report
reconstructs it bit-for-bit.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .degree2 import DegreeTwoVector
from .linalg import Matrix, as_scalar, scalar_str
from .markov import ErgodicityReport, Verdict

TOOL_NAME = "zeonmarkov"
TOOL_VERSION = "0.1.0"


class MatrixFormatError(ValueError):
    """Raised when a matrix document cannot be parsed exactly."""


@dataclass(frozen=True)
class MatrixDocument:
    matrix: Matrix
    label: Optional[str] = None


def parse_matrix_text(text: str) -> MatrixDocument:
    """Parse a matrix from JSON or CSV text (sniffed by first character)."""
    stripped = text.strip()
    if not stripped:
        raise MatrixFormatError("empty input")
    if stripped.startswith("{"):
        return _parse_json(stripped)
    return _parse_csv(stripped)


def _entry(value, i: int, j: int):
    try:
        return as_scalar(value)
    except (ValueError, TypeError) as exc:
        raise MatrixFormatError(f"row {i}, column {j}: {exc}") from exc


def _parse_json(text: str) -> MatrixDocument:
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "rows" not in doc:
        raise MatrixFormatError('JSON matrix needs a "rows" key')
    raw_rows = doc["rows"]
    if not isinstance(raw_rows, list) or not raw_rows:
        raise MatrixFormatError('"rows" must be a non-empty list of rows')
    width = len(raw_rows[0])
    rows = []
    for i, raw in enumerate(raw_rows, start=1):
        if not isinstance(raw, list):
            raise MatrixFormatError(f"row {i} is not a list")
        if len(raw) != width:
            raise MatrixFormatError(
                f"ragged rows: row {i} has {len(raw)} entries, expected {width}"
            )
        rows.append([_entry(v, i, j) for j, v in enumerate(raw, start=1)])
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise MatrixFormatError('"label" must be a string')
    return MatrixDocument(Matrix.from_rows(rows), label)


def _parse_csv(text: str) -> MatrixDocument:
    rows = []
    width = None
    for i, line in enumerate((ln for ln in text.splitlines() if ln.strip()), start=1):
        cells = [c.strip() for c in line.split(",")]
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise MatrixFormatError(
                f"ragged rows: row {i} has {len(cells)} entries, expected {width}"
            )
        rows.append([_entry(c, i, j) for j, c in enumerate(cells, start=1)])
    if not rows:
        raise MatrixFormatError("empty input")
    return MatrixDocument(Matrix.from_rows(rows))


def load_matrix(path: str) -> MatrixDocument:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_matrix_text(handle.read())


def matrix_to_rows(m: Matrix) -> list:
    return [[scalar_str(e) for e in m.row(i)] for i in range(m.rows)]


def matrix_digest(m: Matrix) -> str:
    """Digest of the canonical entry serialization; format-independent."""
    canonical = ";".join(",".join(scalar_str(e) for e in m.row(i)) for i in range(m.rows))
    return "sha256:" + hashlib.sha256(canonical.encode()).hexdigest()


def vector_to_dict(v: DegreeTwoVector) -> dict:
    return {"n": v.n, "coords": [scalar_str(c) for c in v.coords]}


def vector_from_dict(doc: dict) -> DegreeTwoVector:
    return DegreeTwoVector(doc["n"], [as_scalar(c) for c in doc["coords"]])


def report_to_dict(report: ErgodicityReport) -> dict:
    return {
        "is_irreducible": report.is_irreducible,
        "is_aperiodic": report.is_aperiodic,
        "quasi_positive_exponent": report.quasi_positive_exponent,
        "has_positive_invariant": report.has_positive_invariant,
        "det_value": scalar_str(report.det_value),
        "criterion_verdict": report.criterion_verdict.value,
        "witness": None if report.witness is None else vector_to_dict(report.witness),
        "invariant_distribution": None
        if report.invariant_distribution is None
        else [scalar_str(e) for e in report.invariant_distribution.data],
        "limit_matrix": None
        if report.limit_matrix is None
        else matrix_to_rows(report.limit_matrix),
    }


def report_from_dict(doc: dict) -> ErgodicityReport:
    distribution = doc["invariant_distribution"]
    limit = doc["limit_matrix"]
    return ErgodicityReport(
        is_irreducible=doc["is_irreducible"],
        is_aperiodic=doc["is_aperiodic"],
        quasi_positive_exponent=doc["quasi_positive_exponent"],
        has_positive_invariant=doc["has_positive_invariant"],
        det_value=as_scalar(doc["det_value"]),
        criterion_verdict=Verdict(doc["criterion_verdict"]),
        witness=None if doc["witness"] is None else vector_from_dict(doc["witness"]),
        invariant_distribution=None
        if distribution is None
        else Matrix.row_vector([as_scalar(e) for e in distribution]),
        limit_matrix=None if limit is None else Matrix.from_rows(limit),
    )


@dataclass(frozen=True)
class AnalysisReportDocument:
    """Serialized analysis: the report plus input digest, tool version
    and wall-clock timing. Round-trips losslessly."""

    report: ErgodicityReport
    input_digest: str
    n: int
    label: Optional[str]
    elapsed_ms: int
    tool_version: str = TOOL_VERSION

    def to_dict(self) -> dict:
        return {
            "tool": {"name": TOOL_NAME, "version": self.tool_version},
            "input": {"n": self.n, "label": self.label, "digest": self.input_digest},
            "elapsed_ms": self.elapsed_ms,
            "report": report_to_dict(self.report),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> "AnalysisReportDocument":
        return cls(
            report=report_from_dict(doc["report"]),
            input_digest=doc["input"]["digest"],
            n=doc["input"]["n"],
            label=doc["input"]["label"],
            elapsed_ms=doc["elapsed_ms"],
            tool_version=doc["tool"]["version"],
        )

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReportDocument":
        return cls.from_dict(json.loads(text))
