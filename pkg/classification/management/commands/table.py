from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from classification.exceptions import InternalConsistencyError
from classification.golden import build_golden_table, dump_golden, golden_path


class Command(BaseCommand):
    help = "Regenerate the golden table (K_N, initial-data ratios, a_N digits, frozen fates)"

    def add_arguments(self, parser):
        parser.add_argument("--out", help="Write the table here instead of stdout")
        parser.add_argument(
            "--replace",
            action="store_true",
            help="Overwrite the configured golden table",
        )
        parser.add_argument("--max-n", type=int, default=None)
        parser.add_argument(
            "--skip-fates",
            action="store_true",
            help="Skip the shooting runs (fates are left empty)",
        )

    def handle(self, *args, **options):
        max_n = options["max_n"] or settings.VERIFICATION["MAX_N"]
        if max_n < 2:
            raise CommandError("--max-n must be at least 2", returncode=2)
        try:
            table = build_golden_table(max_n, with_fates=not options["skip_fates"])
        except InternalConsistencyError as exc:
            raise CommandError(str(exc), returncode=3)

        payload = dump_golden(table)
        target = golden_path() if options["replace"] else options["out"]
        if not target:
            self.stdout.write(payload, ending="")
            return
        try:
            Path(target).write_text(payload, encoding="utf-8")
        except OSError as exc:
            raise CommandError(f"cannot write golden table to {target}: {exc}", returncode=3)
        self.stderr.write(f"Golden table written to {target}", style_func=self.style.SUCCESS)
