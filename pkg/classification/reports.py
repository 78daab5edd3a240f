"""Report rendering (JSON, CSV, text) and JSON parsing."""

import csv
import enum
import io
import logging
from pathlib import Path

from rest_framework import serializers
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from .exceptions import DomainError, VerificationError
from .serializers import VerificationReportSerializer

logger = logging.getLogger(__name__)

CSV_HEADER = ("id", "anchor", "status", "measured", "expected", "tolerance")


class ReportFormat(enum.Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


def emit_report(report, fmt=ReportFormat.JSON):
    """Deterministic bytes for the report; no timestamps are embedded."""
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.JSON:
        data = VerificationReportSerializer(report).data
        return JSONRenderer().render(data, renderer_context={"indent": 2}) + b"\n"
    if fmt is ReportFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for check in report.checks:
            writer.writerow(
                (check.id, check.anchor, check.status.value, check.measured, check.expected, repr(check.tolerance))
            )
        return buffer.getvalue().encode("utf-8")
    return _render_text(report).encode("utf-8")


def _render_text(report):
    lines = [
        f"N = {report.n}   suites: {', '.join(report.suites)}",
        f"constant mode: {report.constant_mode}   "
        + "   ".join(f"flux[{mode}] = {value}" for mode, value in report.flux_checks.items()),
        f"K_N = {report.curvature_constant}",
    ]
    if report.gamma_estimate is not None:
        lines.append(f"gamma estimate: {report.gamma_estimate}")
    if report.alpha_from_mass is not None:
        lines.append(f"alpha from mass: {report.alpha_from_mass}")
    lines.append("")
    width = max((len(check.id) for check in report.checks), default=0)
    for check in report.checks:
        line = f"{check.status.value.upper():8} {check.id:{width}}  {check.measured}"
        if check.expected:
            line += f"  (expected {check.expected}, tol {check.tolerance:g})"
        if check.notes:
            line += f"  [{check.notes}]"
        lines.append(line)
    for error in report.internal_errors:
        lines.append(f"INTERNAL {error}")
    failures = len(report.failures)
    lines.append("")
    lines.append(f"{len(report.checks)} checks, {failures} failed: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def parse_report(payload):
    """Rebuild a VerificationReport from emitted JSON bytes."""
    try:
        data = JSONParser().parse(io.BytesIO(payload))
    except ParseError as exc:
        raise DomainError(f"report is not valid JSON: {exc}") from exc
    serializer = VerificationReportSerializer(data=data)
    try:
        serializer.is_valid(raise_exception=True)
    except serializers.ValidationError as exc:
        raise DomainError(f"report does not match the schema: {exc.detail}") from exc
    return serializer.save()


def write_report(payload, path=None, stream=None):
    """Write bytes to path, or to stream when no path is given."""
    if path is None:
        stream.write(payload.decode("utf-8"))
        return
    path = Path(path)
    try:
        path.write_bytes(payload)
    except OSError as exc:
        raise VerificationError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
    logger.info("report written to %s (%d bytes)", path, len(payload))
