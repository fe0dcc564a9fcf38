from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from seesaw.exceptions import ConductorError, NotPrimeError, SeesawError
from seesaw.hecke import (IdealE, SplitPrime, canonical_char, elements_up_to_norm, epsilon, eval_element,
                          eval_ideal, ideals_of_norm, level, splitting_type, twisted_char,
                          unramified_split_character)
from seesaw.qfield import QuadElem, kronecker
from seesaw.weilrep import random_element

SQRT = QuadElem.sqrt_u(-7)
OMEGA = QuadElem(Fraction(1, 2), Fraction(1, 2), -7)


class EnumerationTests(SimpleTestCase):
    def test_units_only_at_norm_one(self):
        shells = elements_up_to_norm(4)
        self.assertEqual(len(shells[1]), 2)
        self.assertEqual(sorted(shells), [1, 2, 4])

    def test_ideal_counts_follow_splitting(self):
        self.assertEqual(len(ideals_of_norm(2)), 2)
        self.assertEqual(ideals_of_norm(3), [])
        self.assertEqual(len(ideals_of_norm(7)), 1)
        self.assertEqual(len(ideals_of_norm(9)), 1)

    def test_ideals_ignore_units(self):
        self.assertEqual(IdealE(OMEGA), IdealE(-OMEGA))
        self.assertNotEqual(IdealE(OMEGA), IdealE(OMEGA.conj()))

    def test_splitting_types(self):
        self.assertEqual(splitting_type(2), "split")
        self.assertEqual(splitting_type(3), "inert")
        self.assertEqual(splitting_type(7), "ramified")
        self.assertEqual(splitting_type(11), "split")
        with self.assertRaises(NotPrimeError):
            splitting_type(9)


class CanonicalCharacterTests(SimpleTestCase):
    def test_weight_and_level(self):
        self.assertEqual(canonical_char(2).weight, 3)
        self.assertEqual(canonical_char(2).k, 2)
        self.assertEqual(level(canonical_char(2)), 7)
        self.assertEqual(level(canonical_char(1)), 49)
        self.assertEqual(level(canonical_char(3)), 49)

    def test_conductor(self):
        self.assertEqual(canonical_char(1).conductor(), IdealE(SQRT))
        self.assertEqual(canonical_char(2).conductor(), IdealE(QuadElem.rational(1, -7)))

    def test_power_must_be_positive(self):
        with self.assertRaises(SeesawError):
            canonical_char(0)

    def test_residue_character(self):
        self.assertEqual(epsilon(QuadElem.rational(3, -7)), -1)
        self.assertEqual(epsilon(QuadElem.rational(2, -7)), 1)
        self.assertEqual(epsilon(SQRT), 0)
        self.assertEqual(epsilon(OMEGA), 1)

    def test_odd_power_values_are_well_defined_on_ideals(self):
        chi = canonical_char(1)
        self.assertEqual(eval_element(chi, OMEGA), eval_element(chi, -OMEGA))
        self.assertEqual(eval_element(chi, OMEGA), OMEGA)

    def test_odd_power_rejects_the_ramified_ideal(self):
        with self.assertRaises(ConductorError):
            eval_element(canonical_char(1), SQRT)

    def test_even_power_is_the_square(self):
        x = QuadElem(1, 1, -7)
        self.assertEqual(eval_element(canonical_char(2), x), x * x)

    def test_twisted_character(self):
        self.assertEqual(twisted_char(canonical_char(2)).eval_exact(SQRT), 1)
        self.assertEqual(twisted_char(canonical_char(3)).eval_exact(SQRT), -1)
        value = twisted_char(canonical_char(2)).eval_exact(OMEGA)
        self.assertEqual(value.norm(), 1)


class SplitPrimeTests(SimpleTestCase):
    def test_generator_and_valuations(self):
        prime = SplitPrime.at(11)
        self.assertEqual(prime.pi.norm(), 11)
        self.assertEqual(prime.valuations(QuadElem.rational(11, -7)), (1, 1))
        self.assertEqual(prime.valuations(prime.pi), (1, 0))
        self.assertEqual(prime.valuations(prime.pi.conj() ** 2 / 11), (-1, 1))

    def test_inert_and_even_primes_are_rejected(self):
        with self.assertRaises(SeesawError):
            SplitPrime.at(3)
        with self.assertRaises(SeesawError):
            SplitPrime.at(2)

    def test_unramified_character_is_trivial_on_rationals(self):
        xi = unramified_split_character(11, Fraction(1, 3))
        self.assertEqual(xi.angle_of(QuadElem.rational(11, -7)), 0)
        self.assertEqual(xi.angle_of(xi.prime.pi), Fraction(1, 3))
        self.assertEqual(xi.angle_of(xi.prime.pi.conj()), Fraction(2, 3))


class CharacterPropertyTests(SimpleTestCase):
    def test_multiplicative_on_random_ideals(self):
        rng = np.random.default_rng(5)
        for n in (1, 2, 3):
            chi = canonical_char(n)
            checked = 0
            while checked < 50:
                x, y = random_element(rng, bound=12), random_element(rng, bound=12)
                if n % 2 and (epsilon(x) == 0 or epsilon(y) == 0):
                    continue
                checked += 1
                with self.subTest(n=n, x=str(x), y=str(y)):
                    self.assertEqual(eval_element(chi, x * y), eval_element(chi, x) * eval_element(chi, y))
                    self.assertEqual(eval_element(chi, -x), eval_element(chi, x))
                    unitary = eval_ideal(chi.unitary(), IdealE(x * y))
                    self.assertLess(abs(abs(unitary) - 1), 1e-30)

    def test_restriction_to_rational_integers(self):
        rng = np.random.default_rng(9)
        integers = []
        while len(integers) < 100:
            m = int(rng.integers(1, 10000))
            if m % 7:
                integers.append(m)
        for n in (1, 2, 3):
            chi = canonical_char(n, normalized=True)
            for m in integers:
                value = eval_ideal(chi, IdealE(QuadElem.rational(m, -7)))
                self.assertLess(abs(value - kronecker(-7, m) ** n), 1e-30, msg=f"n={n}, m={m}")
