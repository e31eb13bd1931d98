"""Serialization of verification runs to JSON, CSV and Markdown."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from supercurv.config import REPORT_VERSION
from supercurv.verify import SampleRecord, VerificationReport

FLOAT_FORMAT = ".17g"

CSV_COLUMNS = [
    "check_name",
    "N",
    "k",
    "point_re",
    "point_im",
    "residual_max",
    "K_body_re",
    "K_expected",
    "K_abs_err",
    "soul_max",
    "verdict",
]


def format_float(value: float) -> str:
    """Fixed 17 significant digits; non-finite values use the JSON extensions."""
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    return format(value, FLOAT_FORMAT)


class ReportEncoder(json.JSONEncoder):
    """JSON encoder that writes every float through ``format_float``."""

    def iterencode(self, o: Any, _one_shot: bool = False):
        # pure-Python path: the C encoder always uses float.__repr__
        encoder = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        indent = " " * self.indent if isinstance(self.indent, int) else self.indent
        return json.encoder._make_iterencode(
            {} if self.check_circular else None,
            self.default,
            encoder,
            indent,
            format_float,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )(o, 0)


def jsonable(obj: Any) -> Any:
    """Complex numbers become {re, im}; tuples become lists; everything else passes through."""
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):
        return jsonable(obj.item())
    return obj


@dataclass
class RunReport:
    config: dict[str, Any]
    checks: list[VerificationReport] = field(default_factory=list)
    version: str = REPORT_VERSION

    @property
    def ok(self) -> bool:
        """All positive checks pass and all negative controls fail as required."""
        return all(c.expectation_met for c in self.checks)

    def document(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "config": jsonable(self.config),
            "checks": [_check_to_dict(c) for c in self.checks],
            "ok": self.ok,
        }

    def to_json(self, output_path: str | Path | None = None) -> str:
        js = json.dumps(self.document(), indent=2, cls=ReportEncoder)
        if output_path:
            Path(output_path).write_text(js, encoding="utf-8")
        return js

    def to_csv(self, output_path: str | Path | None = None) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(flatten(self.document()))
        text = buffer.getvalue()
        if output_path:
            Path(output_path).write_text(text, encoding="utf-8")
        return text

    def to_markdown(self, output_path: str | Path | None = None) -> str:
        rows = [["check", "N", "k", "expect", "verdict", "met", "max residual", "K body", "K expected"]]
        for c in self.checks:
            bodies = [s.curvature for s in c.samples if s.curvature is not None]
            rows.append(
                [
                    c.name,
                    _cell(c.params.get("N")),
                    _cell(c.params.get("k")),
                    c.expect,
                    c.verdict,
                    "yes" if c.expectation_met else "NO",
                    f"{_max_residual(c.samples):.3e}",
                    f"{bodies[0].body.real:.12g}" if bodies else "",
                    f"{bodies[0].expected:.12g}" if bodies and bodies[0].expected is not None else "",
                ]
            )
        md = _table_to_md(rows)
        if output_path:
            Path(output_path).write_text(md, encoding="utf-8")
        return md


def _check_to_dict(c: VerificationReport) -> dict[str, Any]:
    return {
        "name": c.name,
        "params": jsonable(c.params),
        "expect": c.expect,
        "samples": [_sample_to_dict(s) for s in c.samples],
        "verdict": c.verdict,
        "expectation_met": c.expectation_met,
        "tolerance": dict(c.tolerance),
        "control": list(c.control),
        "threshold": c.threshold,
        "wall_time_s": c.wall_time_s,
    }


def _sample_to_dict(s: SampleRecord) -> dict[str, Any]:
    curvature = None
    if s.curvature is not None:
        curvature = {
            "body": jsonable(complex(s.curvature.body)),
            "expected": s.curvature.expected,
            "soul_max": s.curvature.soul_max,
        }
    embedding = None
    if s.embedding is not None:
        embedding = {"norm2": s.embedding.norm2, "radius2": s.embedding.radius2}
    return {
        "index": s.index,
        "point": jsonable(complex(s.point)),
        "residuals": {k: float(v) for k, v in s.residuals.items()},
        "curvature": curvature,
        "embedding": embedding,
    }


def _max_residual(samples: list[SampleRecord]) -> float:
    return max((v for s in samples for v in s.residuals.values()), default=0.0)


def _cell(value: Any) -> str:
    return "" if value is None else str(value)


def flatten(document: dict[str, Any]) -> list[dict[str, str]]:
    """One CSV row per sample of every check in a JSON report document."""
    rows = []
    for check in document["checks"]:
        params = check["params"]
        for sample in check["samples"]:
            curvature = sample["curvature"]
            row = {
                "check_name": check["name"],
                "N": _cell(params.get("N")),
                "k": _cell(params.get("k")),
                "point_re": format_float(sample["point"]["re"]),
                "point_im": format_float(sample["point"]["im"]),
                "residual_max": format_float(max(sample["residuals"].values(), default=0.0)),
                "K_body_re": "",
                "K_expected": "",
                "K_abs_err": "",
                "soul_max": "",
                "verdict": check["verdict"],
            }
            if curvature is not None:
                row["K_body_re"] = format_float(curvature["body"]["re"])
                row["soul_max"] = format_float(curvature["soul_max"])
                if curvature["expected"] is not None:
                    row["K_expected"] = format_float(curvature["expected"])
                    row["K_abs_err"] = format_float(abs(curvature["body"]["re"] - curvature["expected"]))
            rows.append(row)
    return rows


def _table_to_md(rows: list[list[str]]) -> str:
    def _escape(s: str) -> str:
        return s.replace("|", "\\|").replace("\n", " ")

    header = "| " + " | ".join(_escape(c) for c in rows[0]) + " |"
    separator = "| " + " | ".join("---" for _ in rows[0]) + " |"
    body = ["| " + " | ".join(_escape(c) for c in row) + " |" for row in rows[1:]]
    return "\n".join([header, separator] + body)
