from fractions import Fraction

from django.test import SimpleTestCase

from seesaw.dichotomy import (chart_cell, check_central_condition, dichotomy_chart, hilbert_cross_check,
                              partner_algebra, ramification_difference, sign_table)
from seesaw.exceptions import SeesawError
from seesaw.qfield import INFINITY, Place, ramification_set


class SignTableTests(SimpleTestCase):
    def test_central_condition_needs_opposite_parity(self):
        self.assertTrue(check_central_condition(3, 2))
        self.assertFalse(check_central_condition(2, 4))
        with self.assertRaises(SeesawError):
            sign_table(2, 4)

    def test_only_seven_and_infinity_can_be_negative(self):
        table = sign_table(3, 2)
        self.assertEqual(table.entries[Place(2)], 1)
        self.assertEqual(table.sigma, frozenset({Place(7), INFINITY}))
        self.assertEqual(table.global_sign, 1)

    def test_flipping_the_archimedean_convention(self):
        self.assertEqual(sign_table(3, 2, flip_infinity=True).sigma, frozenset({Place(7)}))


class ChartTests(SimpleTestCase):
    def test_definite_cell(self):
        cell = chart_cell(3, 2)
        self.assertEqual(cell.as_dict()["sigma"], ["7", "inf"])
        self.assertFalse(cell.split)
        self.assertEqual(cell.realization, Fraction(-1))
        self.assertTrue(hilbert_cross_check(cell))

    def test_split_cell(self):
        cell = chart_cell(2, 3)
        self.assertEqual(cell.as_dict()["sigma"], [])
        self.assertTrue(cell.split)
        self.assertEqual(cell.global_sign, 1)

    def test_vanishing_cells(self):
        chart = dichotomy_chart()
        self.assertEqual(chart[("even", "odd", "n+1>m")].sigma, frozenset({INFINITY}))
        self.assertEqual(chart[("odd", "even", "n+1<=m")].sigma, frozenset({Place(7)}))
        for key in [("even", "odd", "n+1>m"), ("odd", "even", "n+1<=m")]:
            self.assertEqual(chart[key].global_sign, -1)
            self.assertTrue(chart[key].vanishing)
            self.assertIsNone(chart[key].realization)

    def test_every_cell_agrees_with_its_realisation(self):
        for cell in dichotomy_chart().values():
            self.assertTrue(hilbert_cross_check(cell))


class PartnerAlgebraTests(SimpleTestCase):
    def test_partner_changes_the_sign_of_j_squared(self):
        self.assertEqual(partner_algebra(-7, Fraction(-1, 7)), (-7, Fraction(1, 7)))

    def test_partners_differ_at_seven_and_infinity(self):
        self.assertEqual(ramification_difference(-7, Fraction(-1, 7)), frozenset({Place(7), INFINITY}))


class ChartGridTests(SimpleTestCase):
    def test_sigma_parity_matches_the_global_sign(self):
        for n in range(1, 21):
            for m in range(1, 21):
                if not check_central_condition(n, m):
                    continue
                with self.subTest(n=n, m=m):
                    cell = chart_cell(n, m)
                    self.assertEqual(len(cell.sigma) % 2 == 0, cell.global_sign == 1)
                    self.assertTrue(hilbert_cross_check(cell))
                    if cell.global_sign == 1:
                        self.assertEqual(ramification_set(-7, cell.realization), cell.sigma)
