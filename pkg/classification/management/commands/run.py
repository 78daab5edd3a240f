from django.core.management.base import BaseCommand, CommandError

from classification.exceptions import DomainError, VerificationError
from classification.models import VerificationRun
from classification.reports import ReportFormat, emit_report, write_report
from classification.suites import ALL, CONSTANT_MODES, SUITES, SuiteConfig, normalize_suite, run_suite


class Command(BaseCommand):
    help = "Run verification suites for one N and emit a report"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="Order N (dimension 2N-1)")
        parser.add_argument(
            "--suite",
            default=ALL,
            help=f"One of: {', '.join(SUITES + (ALL,))}",
        )
        parser.add_argument("--tol", type=float, help="Quadrature tolerance")
        parser.add_argument("--rmax", type=float, help="Truncation radius of the radial integrals")
        parser.add_argument("--precision", type=int, help="Working precision in bits")
        parser.add_argument("--constants", choices=CONSTANT_MODES, help="Constant chain normalization")
        parser.add_argument("--out", help="Write the report here instead of stdout")
        parser.add_argument(
            "--format",
            choices=[fmt.value for fmt in ReportFormat],
            default=ReportFormat.JSON.value,
        )
        parser.add_argument(
            "--save",
            action="store_true",
            help="Store the JSON report in the run archive",
        )

    def handle(self, *args, **options):
        try:
            suite = normalize_suite(options["suite"])
            if options["n"] < 2:
                raise DomainError(f"N must be >= 2, got {options['n']}")
            config = SuiteConfig.from_settings(
                tolerance=options["tol"],
                truncation_radius=options["rmax"],
                precision=options["precision"],
                constant_mode=options["constants"],
            )
        except DomainError as exc:
            raise CommandError(str(exc), returncode=2)

        report = run_suite(suite, options["n"], config)
        payload = emit_report(report, options["format"])
        try:
            write_report(payload, options["out"], self.stdout)
        except VerificationError as exc:
            raise CommandError(str(exc), returncode=3)

        if options["save"]:
            if options["format"] != ReportFormat.JSON.value:
                json_payload = emit_report(report, ReportFormat.JSON)
            else:
                json_payload = payload
            run = VerificationRun.archive(report, suite, json_payload)
            self.stderr.write(f"Archived as run {run.pk}", style_func=self.style.SUCCESS)

        if report.internal_errors:
            raise CommandError("; ".join(report.internal_errors), returncode=3)
        if not report.passed:
            failed = ", ".join(check.id for check in report.failures)
            raise CommandError(f"{len(report.failures)} checks failed: {failed}", returncode=1)
