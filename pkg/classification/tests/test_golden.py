import json
import tempfile
from pathlib import Path

import mpmath
from django.test import SimpleTestCase

from classification.exceptions import InternalConsistencyError
from classification.golden import (
    build_golden_table,
    dump_golden,
    freeze_fates,
    golden_path,
    load_golden,
    normalization_digits,
)
from classification.radial_ode import Fate, FateKind, GridPoint


class GoldenTableTests(SimpleTestCase):
    def test_shipped_table(self):
        table = load_golden()
        self.assertEqual(table["curvature_constants"]["4"], "135135")
        self.assertEqual(table["initial_data_ratios"]["3"], ["1", "-5", "-35"])
        self.assertEqual(len(table["fates"]["2"]["nonexistence"]), 10)
        self.assertEqual(
            table["fates"]["2"]["perturbation"],
            ["hits_zero", "hits_zero", "linear_growth", "superlinear", "superlinear"],
        )

    def test_shipped_table_is_in_dump_layout(self):
        path = golden_path()
        self.assertEqual(path.read_text(encoding="utf-8"), dump_golden(load_golden(path)))

    def test_normalization_digits_match_shipped_table(self):
        table = load_golden()
        for big_n in (2, 3, 6):
            digits = normalization_digits(big_n)
            with mpmath.workprec(256):
                gap = abs(mpmath.mpf(digits) - mpmath.mpf(table["normalization_constants"][str(big_n)]))
                self.assertLessEqual(gap, mpmath.mpf("1e-36"))

    def test_build_without_fates(self):
        table = build_golden_table(3, with_fates=False)
        self.assertEqual(table["curvature_constants"], {"2": "15", "3": "945"})
        self.assertEqual(table["fates"], {})
        self.assertEqual(json.loads(dump_golden(table)), table)

    def test_schema_mismatch(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "table.json"
            path.write_text(json.dumps({"schema_version": 99}), encoding="utf-8")
            with self.assertRaises(InternalConsistencyError):
                load_golden(path)

    def test_disagreeing_fates_freeze_as_inconclusive(self):
        grow = GridPoint((1.0,), Fate(FateKind.SUPERLINEAR))
        zero = GridPoint((1.0,), Fate(FateKind.HITS_ZERO, radius=1.0))
        failed = GridPoint((1.0,), error="rejected")
        frozen = freeze_fates([[grow, grow, failed], [grow, zero, failed]])
        self.assertEqual(frozen, ["superlinear", "inconclusive", "error"])
