from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from classification.exact_constants import constants_summary
from classification.exceptions import DomainError


class Command(BaseCommand):
    help = "Print both constant chains for one N exactly, with their flux checks"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="Order N (dimension 2N-1)")

    def handle(self, *args, **options):
        try:
            summary = constants_summary(options["n"], settings.VERIFICATION["DECIMAL_DIGITS"])
        except DomainError as exc:
            raise CommandError(str(exc), returncode=2)
        self.stdout.write(JSONRenderer().render(summary, renderer_context={"indent": 2}).decode("utf-8"))
