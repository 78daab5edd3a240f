"""
Golden reference table: K_N, initial-data ratios, normalization digits and
frozen shooting fates.

Real numbers are frozen only when two working precisions agree, and fates
only when two integration tolerances agree; a disagreeing fate is frozen as
inconclusive.
"""

import json
import logging
from fractions import Fraction
from pathlib import Path

import mpmath
from django.conf import settings

from .exceptions import InternalConsistencyError
from .radial_calculus import curvature_constant, double_factorial, initial_data_ratios
from .radial_ode import (
    FateKind,
    OdeSystem,
    Sign,
    nonexistence_grid,
    perturbation_grid,
    shoot_grid,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
NORMALIZATION_DIGITS = 40
PRECISIONS = (256, 512)
FATE_TOLERANCES = (1e-8, 1e-10)
FATE_RMAX = 50.0


def golden_path(path=None):
    path = Path(path or settings.VERIFICATION["GOLDEN_TABLE"])
    if not path.is_absolute():
        path = Path(settings.BASE_DIR) / path
    return path


def load_golden(path=None):
    path = golden_path(path)
    with open(path, encoding="utf-8") as handle:
        table = json.load(handle)
    if table.get("schema_version") != SCHEMA_VERSION:
        raise InternalConsistencyError(f"golden table {path} has schema {table.get('schema_version')!r}")
    return table


def normalization_digits(big_n):
    """a_N = K_N^(-1/(4N)) to NORMALIZATION_DIGITS digits, agreed at both precisions."""
    k_n = curvature_constant(big_n)
    renderings = []
    for precision in PRECISIONS:
        with mpmath.workprec(precision):
            a = mpmath.mpf(k_n.numerator) / k_n.denominator
            a = a ** (-mpmath.mpf(1) / (4 * big_n))
            renderings.append(mpmath.nstr(a, NORMALIZATION_DIGITS, strip_zeros=False))
    if len(set(renderings)) != 1:
        raise InternalConsistencyError(f"a_{big_n} differs across precisions: {renderings}")
    return renderings[0]


def shoot_at_tolerances(system, grid, r_max=FATE_RMAX):
    return [shoot_grid(system, grid, r_max, tol) for tol in FATE_TOLERANCES]


def freeze_fates(runs):
    """Fate kinds per point; points whose runs disagree are frozen as inconclusive."""
    frozen = []
    for points in zip(*runs):
        kinds = {point.fate.kind.value if point.fate else "error" for point in points}
        frozen.append(kinds.pop() if len(kinds) == 1 else FateKind.INCONCLUSIVE.value)
    return frozen


def frozen_fates(system, grid):
    return freeze_fates(shoot_at_tolerances(system, grid))


def build_golden_table(max_n=6, with_fates=True):
    curvature = {}
    ratios = {}
    normalization = {}
    for big_n in range(2, max_n + 1):
        k_n = curvature_constant(big_n)
        if k_n != double_factorial(4 * big_n - 3):
            raise InternalConsistencyError(f"K_{big_n} = {k_n} disagrees with (4N-3)!!")
        curvature[str(big_n)] = str(k_n)
        ratios[str(big_n)] = [str(Fraction(r)) for r in initial_data_ratios(big_n)]
        normalization[str(big_n)] = normalization_digits(big_n)

    fates = {}
    if with_fates:
        fates["2"] = {
            "nonexistence": frozen_fates(OdeSystem(2, Sign.MINUS), nonexistence_grid()),
            "perturbation": frozen_fates(OdeSystem(2, Sign.PLUS), perturbation_grid(2)),
        }
    logger.info("golden table built for N = 2..%d", max_n)
    return {
        "schema_version": SCHEMA_VERSION,
        "curvature_constants": curvature,
        "initial_data_ratios": ratios,
        "normalization_constants": normalization,
        "precisions": list(PRECISIONS),
        "fate_tolerances": list(FATE_TOLERANCES),
        "fates": fates,
    }


def dump_golden(table):
    return json.dumps(table, indent=2, sort_keys=True) + "\n"
