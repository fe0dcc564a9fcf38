from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from seesaw.exceptions import NotPrimeError, SeesawError, ZeroArgumentError
from seesaw.qfield import (INFINITY, Place, QuadElem, hilbert_symbol, hilbert_symbol_bruteforce, kronecker,
                           ramification_set, relevant_places, valuation)


class QuadElemTests(SimpleTestCase):
    def setUp(self):
        self.x = QuadElem(1, 1, -7)
        self.omega = QuadElem(Fraction(1, 2), Fraction(1, 2), -7)

    def test_norm_and_trace(self):
        self.assertEqual(self.x.norm(), 8)
        self.assertEqual(self.x.trace(), 2)
        self.assertEqual(self.omega.norm(), 2)

    def test_product_with_conjugate_is_the_norm(self):
        self.assertEqual(self.x * self.x.conj(), 8)

    def test_inverse(self):
        self.assertEqual(self.x * self.x.inverse(), 1)
        self.assertEqual(self.x ** -2 * self.x ** 2, 1)

    def test_comparison_with_rationals(self):
        self.assertEqual(QuadElem.rational(3, -7), 3)
        self.assertNotEqual(self.x, 1)
        self.assertEqual(hash(QuadElem.rational(Fraction(1, 2), -7)), hash(QuadElem(Fraction(1, 2), 0, -7)))

    def test_integrality_in_the_maximal_order(self):
        self.assertTrue(self.omega.is_integral())
        self.assertFalse(QuadElem(Fraction(1, 2), 0, -7).is_integral())
        self.assertTrue(QuadElem(2, 3, -7).is_integral())

    def test_square_u_is_rejected(self):
        with self.assertRaises(SeesawError):
            QuadElem(1, 1, 4)


class ValuationTests(SimpleTestCase):
    def test_valuations(self):
        self.assertEqual(valuation(Fraction(49, 3), 7), 2)
        self.assertEqual(valuation(Fraction(5, 14), 7), -1)
        self.assertEqual(valuation(12, 2), 2)

    def test_zero_has_no_valuation(self):
        with self.assertRaises(ZeroArgumentError):
            valuation(0, 3)

    def test_kronecker_symbol_of_minus_seven(self):
        self.assertEqual(kronecker(-7, 2), 1)
        self.assertEqual(kronecker(-7, 3), -1)
        self.assertEqual(kronecker(-7, 11), 1)
        self.assertEqual(kronecker(-7, 7), 0)


class HilbertSymbolTests(SimpleTestCase):
    def test_minus_seven_against_minus_one_seventh(self):
        self.assertEqual(hilbert_symbol(-7, Fraction(-1, 7), Place(7)), -1)
        self.assertEqual(hilbert_symbol(-7, Fraction(-1, 7), INFINITY), -1)
        self.assertEqual(ramification_set(-7, Fraction(-1, 7)), frozenset({Place(7), INFINITY}))

    def test_minus_seven_against_one_seventh_splits(self):
        self.assertEqual(ramification_set(-7, Fraction(1, 7)), frozenset())

    def test_hamilton_quaternions(self):
        self.assertEqual(ramification_set(-1, -1), frozenset({Place(2), INFINITY}))

    def test_brute_force_agrees_at_odd_primes(self):
        for a, b in [(2, 3), (-1, -1), (3, 7), (-7, 5), (-7, -1), (5, 10)]:
            for p in (3, 5, 7):
                self.assertEqual(hilbert_symbol(a, b, Place(p)), hilbert_symbol_bruteforce(a, b, p),
                                 msg=f"({a}, {b})_{p}")

    def test_zero_argument(self):
        with self.assertRaises(ZeroArgumentError):
            hilbert_symbol(0, 1, Place(3))

    def test_place_must_be_prime(self):
        with self.assertRaises(NotPrimeError):
            Place(9)


class HilbertPropertyTests(SimpleTestCase):
    def setUp(self):
        self.rng = np.random.default_rng(17)

    def random_rational(self):
        while True:
            numerator = int(self.rng.integers(-300, 301))
            if numerator:
                return Fraction(numerator, int(self.rng.integers(1, 80)))

    def test_product_formula(self):
        for _ in range(1000):
            a, b = self.random_rational(), self.random_rational()
            product = 1
            for place in relevant_places(a, b):
                product *= hilbert_symbol(a, b, place)
            self.assertEqual(product, 1, msg=f"({a}, {b})")

    def test_bimultiplicativity(self):
        for _ in range(300):
            a, c, b = self.random_rational(), self.random_rational(), self.random_rational()
            for place in relevant_places(a, c, b):
                self.assertEqual(hilbert_symbol(a * c, b, place),
                                 hilbert_symbol(a, b, place) * hilbert_symbol(c, b, place),
                                 msg=f"({a}·{c}, {b}) at {place.label}")

    def test_brute_force_agrees_at_two(self):
        self.assertEqual(hilbert_symbol_bruteforce(-1, -1, 2), -1)
        self.assertEqual(hilbert_symbol_bruteforce(-7, Fraction(-1, 7), 2), 1)
        for _ in range(200):
            a, b = self.random_rational(), self.random_rational()
            self.assertEqual(hilbert_symbol(a, b, Place(2)), hilbert_symbol_bruteforce(a, b, 2), msg=f"({a}, {b})_2")

    def test_brute_force_agrees_at_random_odd_pairs(self):
        for _ in range(100):
            a, b = self.random_rational(), self.random_rational()
            for p in (3, 5, 7):
                self.assertEqual(hilbert_symbol(a, b, Place(p)), hilbert_symbol_bruteforce(a, b, p),
                                 msg=f"({a}, {b})_{p}")
