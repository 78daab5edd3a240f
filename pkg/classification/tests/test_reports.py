import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from classification.checks import (
    CheckStatus,
    VerificationReport,
    exact_check,
    numeric_check,
    skipped,
)
from classification.exceptions import DomainError, VerificationError
from classification.reports import CSV_HEADER, emit_report, parse_report, write_report


def sample_report(**overrides):
    values = dict(
        n=2,
        suites=["constants"],
        constant_mode="corrected",
        flux_checks={"paper": "1", "corrected": "1"},
        checks=[
            exact_check("constants.flux.corrected", "green-normalization", "1", "1"),
            numeric_check("representation.mass_identity", "mass-identity", 0.7128, 0.71283, 1e-5),
            skipped("perturbation.golden", "perturbation", "regenerate with manage.py table"),
        ],
        curvature_constant="15",
        config={"tolerance": 1e-6, "precision": 128},
        toolkit_version="0.1.0",
    )
    values.update(overrides)
    return VerificationReport(**values).sort_checks()


class ReportTests(SimpleTestCase):
    def test_numeric_check_failure(self):
        report = sample_report()
        failures = report.failures
        self.assertEqual([c.id for c in failures], ["representation.mass_identity"])
        self.assertFalse(report.passed)

    def test_skipped_checks_do_not_fail(self):
        report = sample_report(checks=[skipped("a.b", "jensen", "nothing to do")])
        self.assertTrue(report.passed)

    def test_json_round_trip(self):
        report = sample_report()
        self.assertEqual(parse_report(emit_report(report, "json")), report)

    def test_json_is_deterministic(self):
        self.assertEqual(emit_report(sample_report()), emit_report(sample_report()))

    def test_json_fields(self):
        payload = emit_report(sample_report()).decode("utf-8")
        self.assertIn('"schema_version": 1', payload)
        self.assertIn('"passed": false', payload)
        self.assertIn('"status": "skipped"', payload)

    def test_csv(self):
        lines = emit_report(sample_report(), "csv").decode("utf-8").splitlines()
        self.assertEqual(lines[0], ",".join(CSV_HEADER))
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[1].startswith("constants.flux.corrected,green-normalization,pass,1,1,"))

    def test_text(self):
        text = emit_report(sample_report(), "text").decode("utf-8")
        self.assertIn("K_N = 15", text)
        self.assertIn("3 checks, 1 failed: FAIL", text)

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            emit_report(sample_report(), "xml")

    def test_parse_rejects_garbage(self):
        with self.assertRaises(DomainError):
            parse_report(b"{not json")

    def test_parse_rejects_other_schema(self):
        payload = emit_report(sample_report()).replace(b'"schema_version": 1', b'"schema_version": 7')
        with self.assertRaises(DomainError):
            parse_report(payload)

    def test_parse_rejects_unknown_status(self):
        payload = emit_report(sample_report()).replace(b'"status": "skipped"', b'"status": "maybe"')
        with self.assertRaises(DomainError):
            parse_report(payload)

    def test_check_status_survives(self):
        report = parse_report(emit_report(sample_report()))
        statuses = {check.id: check.status for check in report.checks}
        self.assertIs(statuses["perturbation.golden"], CheckStatus.SKIPPED)


class WriteReportTests(SimpleTestCase):
    def test_write_to_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "report.json"
            write_report(b"{}\n", path)
            self.assertEqual(path.read_bytes(), b"{}\n")

    def test_unwritable_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(VerificationError) as ctx:
                write_report(b"{}\n", Path(tmp) / "missing" / "report.json")
        self.assertIn("report.json", str(ctx.exception))
