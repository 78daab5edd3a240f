import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from classification.exceptions import DomainError
from classification.radial_calculus import initial_data
from classification.radial_ode import OdeSystem, Sign, classify_trajectory, integrate, trajectory_to_csv

logger = logging.getLogger(__name__)


def parse_initial_data(raw):
    """Comma-separated values, or a file holding them."""
    if Path(raw).is_file():
        raw = Path(raw).read_text(encoding="utf-8")
    cleaned = raw.replace("\n", ",").split(",")
    try:
        return [float(value) for value in cleaned if value.strip()]
    except ValueError as exc:
        raise DomainError(f"cannot parse initial data {raw!r}: {exc}") from exc


class Command(BaseCommand):
    help = "Integrate the radial system and export the trajectory as CSV"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="Order N (dimension 2N-1)")
        parser.add_argument("--sign", choices=[sign.value for sign in Sign], default=Sign.PLUS.value)
        parser.add_argument(
            "--init",
            help="v_0(0), v_0'(0), ..., v_{N-1}(0), v_{N-1}'(0) (or only the values); "
            "defaults to the entire solution",
        )
        parser.add_argument("--rmax", type=float, default=None)
        parser.add_argument("--tol", type=float, default=None)
        parser.add_argument("--out", help="Write the CSV here instead of stdout")

    def handle(self, *args, **options):
        conf = settings.VERIFICATION
        r_max = options["rmax"] if options["rmax"] is not None else conf["ODE_RMAX"]
        tol = options["tol"] if options["tol"] is not None else conf["ODE_TOLERANCE"]
        try:
            system = OdeSystem(options["n"], Sign(options["sign"]))
            if options["init"]:
                init = parse_initial_data(options["init"])
            else:
                init = [float(x) for x in initial_data(options["n"])]
            trajectory = integrate(system, init, r_max, tol, conf["POSITIVITY_FLOOR"])
        except DomainError as exc:
            raise CommandError(str(exc), returncode=2)

        fate = classify_trajectory(trajectory)
        logger.info("trajectory %s, fate %s: %s", trajectory.termination.value, fate.label(), fate.detail)

        payload = trajectory_to_csv(trajectory)
        if options["out"]:
            try:
                Path(options["out"]).write_text(payload, encoding="utf-8")
            except OSError as exc:
                raise CommandError(f"cannot write trajectory to {options['out']}: {exc}", returncode=3)
        else:
            self.stdout.write(payload, ending="")
