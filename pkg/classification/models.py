import json

from django.db import models


# -------------------
# Run archive
# -------------------
class VerificationRun(models.Model):
    n = models.PositiveIntegerField(help_text="Order N of the equation, dimension 2N-1")
    suite = models.CharField(max_length=32)
    constant_mode = models.CharField(max_length=16)
    passed = models.BooleanField(default=False)
    report = models.TextField(help_text="JSON report exactly as emitted")
    toolkit_version = models.CharField(max_length=20)
    created_at = models.DateTimeField(auto_now_add=True)

    def __str__(self):
        outcome = "pass" if self.passed else "fail"
        return f"N={self.n} {self.suite} ({outcome})"

    def report_data(self):
        return json.loads(self.report)

    @classmethod
    def archive(cls, report, suite, payload):
        """Store an emitted JSON report."""
        return cls.objects.create(
            n=report.n,
            suite=suite,
            constant_mode=report.constant_mode,
            passed=report.passed,
            report=payload.decode("utf-8"),
            toolkit_version=report.toolkit_version,
        )

    class Meta:
        verbose_name = "Verification run"
        verbose_name_plural = "Verification runs"
        ordering = ["-created_at", "-id"]
