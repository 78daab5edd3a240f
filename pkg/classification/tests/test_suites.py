from unittest import mock

from django.test import SimpleTestCase

from classification.checks import CheckStatus
from classification.exceptions import DomainError, QuadratureFailure
from classification.reports import ReportFormat, emit_report
from classification.suites import ANCHORS, SuiteConfig, normalize_suite, run_suite


def by_id(report):
    return {check.id: check for check in report.checks}


class SuiteNameTests(SimpleTestCase):
    def test_spellings(self):
        self.assertEqual(normalize_suite("ode_reproduction"), "odereproduction")
        self.assertEqual(normalize_suite("Mean-Value"), "meanvalue")
        self.assertEqual(normalize_suite("ALL"), "all")

    def test_unknown_suite(self):
        with self.assertRaises(DomainError):
            normalize_suite("bogus")


class SuiteConfigTests(SimpleTestCase):
    def test_settings_defaults(self):
        config = SuiteConfig.from_settings()
        self.assertEqual(config.tolerance, 1e-6)
        self.assertEqual(config.sample_radii, (0.0, 0.5, 1.0, 2.0, 5.0))
        self.assertEqual(config.as_dict()["golden_table"], "golden_table.json")

    def test_none_overrides_are_ignored(self):
        config = SuiteConfig.from_settings(tolerance=None, precision=192)
        self.assertEqual(config.tolerance, 1e-6)
        self.assertEqual(config.precision, 192)

    def test_validation(self):
        with self.assertRaises(DomainError):
            SuiteConfig(tolerance=0)
        with self.assertRaises(DomainError):
            SuiteConfig(constant_mode="other")
        with self.assertRaises(DomainError):
            SuiteConfig(precision=16)

    def test_quadrature_tightens_the_tolerance(self):
        config = SuiteConfig(tolerance=1e-6)
        self.assertEqual(config.quadrature().rel_tol, 1e-6 * 1e-2)
        self.assertAlmostEqual(config.check_tolerance, 1e-5)


class ExactSuiteTests(SimpleTestCase):
    def test_symbolic(self):
        for big_n in (2, 3):
            report = run_suite("symbolic", big_n)
            self.assertTrue(report.passed, [c.id for c in report.failures])
            checks = by_id(report)
            self.assertEqual(checks["symbolic.curvature_constant"].measured, str(15 if big_n == 2 else 945))
            self.assertIn(f"symbolic.sub_polyharmonic.k{big_n - 1}", checks)
            self.assertIs(checks["symbolic.finite_difference.random"].status, CheckStatus.PASS)

    def test_constants(self):
        report = run_suite("constants", 3)
        self.assertTrue(report.passed)
        self.assertEqual(report.constant_mode, "corrected")
        self.assertEqual(report.flux_checks, {"paper": "3", "corrected": "1"})
        self.assertEqual(by_id(report)["constants.flux.paper"].measured, "3")

    def test_modes_agree_for_n2(self):
        checks = by_id(run_suite("constants", 2))
        self.assertIs(checks["constants.modes_agree"].status, CheckStatus.PASS)

    def test_forced_constant_mode(self):
        report = run_suite("constants", 3, SuiteConfig.from_settings(constant_mode="paper"))
        self.assertEqual(report.constant_mode, "paper")

    def test_jensen(self):
        report = run_suite("jensen", 4)
        self.assertTrue(report.passed)
        self.assertEqual(by_id(report)["jensen.violations"].measured, "0")

    def test_checks_are_ordered(self):
        report = run_suite("symbolic", 2)
        ids = [check.id for check in report.checks]
        self.assertEqual(ids, sorted(ids))

    def test_invalid_order(self):
        with self.assertRaises(DomainError):
            run_suite("symbolic", 1)

    def test_internal_failure_is_reported(self):
        def broken(ctx):
            raise QuadratureFailure("no convergence")

        with mock.patch.dict("classification.suites.SUITE_FUNCTIONS", {"jensen": broken}):
            report = run_suite("jensen", 2)
        self.assertFalse(report.passed)
        self.assertEqual(report.internal_errors, ["jensen: no convergence"])
        self.assertEqual(report.checks[0].id, "jensen.internal")


class NumericSuiteTests(SimpleTestCase):
    def test_representation_n2(self):
        report = run_suite("representation", 2)
        self.assertTrue(report.passed, [c.id for c in report.failures])
        self.assertIsNotNone(report.gamma_estimate)
        self.assertIsNotNone(report.alpha_from_mass)
        self.assertIn("representation.k1.r0.5", by_id(report))

    def test_ode_reproduction_n2(self):
        checks = by_id(run_suite("odereproduction", 2))
        self.assertIs(checks["ode.fate"].status, CheckStatus.PASS)
        self.assertIs(checks["ode.determinism"].status, CheckStatus.PASS)
        self.assertIs(checks["ode.reproduction.k0.r5"].status, CheckStatus.PASS)
        self.assertIs(checks["ode.structure.k1"].status, CheckStatus.PASS)

    def test_ode_reproduction_n3(self):
        checks = by_id(run_suite("odereproduction", 3))
        reproduction = [c for c in checks.values() if c.id.startswith("ode.reproduction.")]
        self.assertEqual(len(reproduction), 12)
        for check in reproduction:
            self.assertIs(check.status, CheckStatus.PASS, check.id)
        check = checks["ode.reproduction.k0.r1"]
        self.assertAlmostEqual(check.tolerance, 1e-8 * float(check.expected), delta=1e-14)

    def test_nonexistence_scan_n2(self):
        report = run_suite("nonexistencescan", 2)
        checks = by_id(report)
        self.assertIs(checks["nonexistence.golden"].status, CheckStatus.PASS)
        self.assertIs(checks["nonexistence.no_entire_solution"].status, CheckStatus.PASS)
        self.assertIs(checks["perturbation.golden"].status, CheckStatus.PASS)
        self.assertTrue(report.passed, [c.id for c in report.failures])

    def test_representation_n3(self):
        report = run_suite("representation", 3)
        self.assertTrue(report.passed, [c.id for c in report.failures])
        self.assertIn("representation.k2.r5", by_id(report))

    def test_decay(self):
        for big_n in (2, 3):
            report = run_suite("decay", big_n)
            self.assertTrue(report.passed, [c.id for c in report.failures])
            self.assertIs(by_id(report)["decay.k1.rate"].status, CheckStatus.PASS)

    def test_mean_value(self):
        for big_n in (2, 3):
            report = run_suite("meanvalue", big_n)
            self.assertTrue(report.passed, [c.id for c in report.failures])
            checks = by_id(report)
            self.assertIn(f"mean_value.N{big_n}.x0.r0.5", checks)
            self.assertIs(checks[f"mean_value.N{big_n}.x2.r1"].status, CheckStatus.PASS)


class FullRunTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.report = run_suite("all", 2)

    def test_every_check_passes(self):
        self.assertEqual(self.report.internal_errors, [])
        self.assertTrue(self.report.passed, [c.id for c in self.report.failures])

    def test_touches_every_anchor(self):
        self.assertEqual(set(self.report.coverage), set(ANCHORS))
        self.assertIs(by_id(self.report)["coverage.anchors"].status, CheckStatus.PASS)

    def test_json_report_is_byte_stable(self):
        again = run_suite("all", 2)
        self.assertEqual(emit_report(again, ReportFormat.JSON), emit_report(self.report, ReportFormat.JSON))
