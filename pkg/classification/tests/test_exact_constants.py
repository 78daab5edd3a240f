from fractions import Fraction

import mpmath
from django.test import SimpleTestCase

from classification.exact_constants import (
    ConstantMode,
    ExactScalar,
    constant_chain,
    constants_summary,
    flux_check,
    gamma_half,
    select_mode,
    sphere_area,
)
from classification.exceptions import DomainError


class ExactScalarTests(SimpleTestCase):
    def test_products_add_pi_exponents(self):
        self.assertEqual(ExactScalar(2, 1) * ExactScalar(3, 1), ExactScalar(6, 2))
        self.assertEqual((ExactScalar(6, 2) / ExactScalar(3, 1)), ExactScalar(2, 1))

    def test_zero_is_canonical(self):
        self.assertEqual(ExactScalar(0, 3), ExactScalar(0))
        self.assertTrue(ExactScalar(0, 5).is_zero)

    def test_render(self):
        self.assertEqual(ExactScalar(6, 2).render(), "6*pi^1")
        self.assertEqual(ExactScalar(1, 1).render(), "1*pi^1/2")
        self.assertEqual(ExactScalar(Fraction(3, 4)).render(), "3/4")
        self.assertEqual(ExactScalar(0, 2).render(), "0")

    def test_to_mpf(self):
        with mpmath.workprec(128):
            self.assertLess(abs(ExactScalar(4, 2).to_mpf() - 4 * mpmath.pi), mpmath.mpf("1e-35"))

    def test_non_integer_power_is_rejected(self):
        with self.assertRaises(DomainError):
            ExactScalar(2, 1) ** 1.5

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            ExactScalar(1) / ExactScalar(0)


class SphereAreaTests(SimpleTestCase):
    def test_gamma_at_half_integers(self):
        self.assertEqual(gamma_half(1), ExactScalar(1, 1))
        self.assertEqual(gamma_half(5), ExactScalar(Fraction(3, 4), 1))

    def test_gamma_rejects_even_arguments(self):
        with self.assertRaises(DomainError):
            gamma_half(2)

    def test_low_dimensions(self):
        self.assertEqual(sphere_area(3), ExactScalar(4, 2))
        self.assertEqual(sphere_area(5), ExactScalar(Fraction(8, 3), 4))

    def test_area_times_gamma(self):
        for n in (3, 5, 7, 9, 11):
            self.assertEqual(sphere_area(n) * gamma_half(n), ExactScalar(2, n))

    def test_even_dimension_is_rejected(self):
        with self.assertRaises(DomainError):
            sphere_area(4)


class ConstantChainTests(SimpleTestCase):
    def test_n2_corrected_chain(self):
        chain = constant_chain(2, ConstantMode.CORRECTED)
        self.assertEqual(chain.c, (ExactScalar(Fraction(1, 8), -2), ExactScalar(Fraction(1, 4), -2)))

    def test_n3_corrected_chain(self):
        chain = constant_chain(3)
        self.assertEqual(
            chain.c,
            (
                ExactScalar(Fraction(1, 64), -4),
                ExactScalar(Fraction(1, 16), -4),
                ExactScalar(Fraction(1, 8), -4),
            ),
        )

    def test_modes_differ_by_2n_minus_3(self):
        for big_n in range(2, 7):
            corrected = constant_chain(big_n, ConstantMode.CORRECTED)
            literal = constant_chain(big_n, ConstantMode.PAPER_LITERAL)
            for ck, lk in zip(corrected.c, literal.c):
                self.assertEqual(lk / ck, ExactScalar(2 * big_n - 3))

    def test_chain_verifies(self):
        for big_n in range(2, 7):
            for mode in ConstantMode:
                self.assertTrue(constant_chain(big_n, mode).verify())

    def test_invalid_order(self):
        with self.assertRaises(DomainError):
            constant_chain(1)

    def test_flux(self):
        for big_n in range(2, 7):
            self.assertEqual(flux_check(big_n, ConstantMode.CORRECTED), ExactScalar(1))
            self.assertEqual(flux_check(big_n, ConstantMode.PAPER_LITERAL), ExactScalar(2 * big_n - 3))

    def test_mode_selection(self):
        self.assertIs(select_mode(2), ConstantMode.CORRECTED)
        self.assertIs(select_mode(5), ConstantMode.CORRECTED)

    def test_summary(self):
        summary = constants_summary(3)
        self.assertEqual(summary["dimension"], 5)
        self.assertEqual(summary["selected_mode"], "corrected")
        self.assertEqual(summary["flux"], {"paper": "3", "corrected": "1"})
        self.assertEqual(len(summary["chains"]["corrected"]["c"]), 3)
        self.assertEqual(summary["sphere_area"]["coeff_num"], 8)
