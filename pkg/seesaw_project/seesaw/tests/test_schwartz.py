from fractions import Fraction

import mpmath
import sympy
from django.test import SimpleTestCase

from seesaw.exceptions import SeesawError
from seesaw.schwartz import (N_SYM, Y_SYM, eval_phi, kummer_poly, maass_shimura_closed_form,
                             maass_shimura_constant, maass_shimura_phi_relation, numeric_inner_product,
                             orthogonality_matrix, phi_inner_product, raise_weight_polynomial, rising,
                             rotation_eigen_check, rotation_eigenvalue, verify_ode)


class KummerTests(SimpleTestCase):
    def test_coefficients(self):
        self.assertEqual(kummer_poly(0, 1).coefficients, (Fraction(1), Fraction(-1)))
        self.assertEqual(kummer_poly(2, 2).coefficients, (Fraction(1), Fraction(-2, 3), Fraction(1, 12)))

    def test_negative_l_is_rejected(self):
        with self.assertRaises(SeesawError):
            kummer_poly(1, -1)

    def test_confluent_equation(self):
        for k, l in ((0, 0), (2, 1), (2, 3), (-3, 2), (5, 4)):
            with self.subTest(k=k, l=l):
                self.assertTrue(verify_ode(k, l))

    def test_rising(self):
        self.assertEqual(rising(3, 2), 12)
        self.assertEqual(rising(-2, 3), 0)

    def test_gaussian_at_origin(self):
        self.assertEqual(eval_phi(0, 3, 0), 1)
        self.assertEqual(eval_phi(2, 0, 0), 0)


class RotationTests(SimpleTestCase):
    def test_eigenfunctions(self):
        for k, l in ((0, 0), (2, 0), (2, 1), (-1, 2)):
            with self.subTest(k=k, l=l):
                self.assertTrue(rotation_eigen_check(k, l))

    def test_eigenvalue(self):
        self.assertEqual([rotation_eigenvalue(2, l) for l in range(4)], [3, 5, 7, 9])


class InnerProductTests(SimpleTestCase):
    def test_closed_form(self):
        expected = 1 / (16 * mpmath.pi ** 2)
        self.assertLess(abs(phi_inner_product(2, 0) - expected), mpmath.mpf(10) ** -30)

    def test_numeric_matches_closed_form(self):
        for k, l in ((2, 0), (2, 1), (1, 2)):
            with self.subTest(k=k, l=l):
                closed = phi_inner_product(k, l)
                numeric = numeric_inner_product(k, l)
                self.assertLess(abs(numeric - closed) / closed, 1e-12)

    def test_orthogonality(self):
        gram = orthogonality_matrix(2, 2)
        for i in range(3):
            for j in range(3):
                if i != j:
                    self.assertLess(abs(gram[i][j]), 1e-14)


class MaassShimuraTests(SimpleTestCase):
    def test_constant(self):
        self.assertEqual(maass_shimura_constant(2, 1), sympy.Rational(-3, 4) / sympy.pi)
        self.assertEqual(maass_shimura_constant(2, 0), 1)

    def test_one_raising_step(self):
        expected = sympy.Poly(N_SYM - 3 * Y_SYM, N_SYM, Y_SYM)
        self.assertEqual(raise_weight_polynomial(3, 1), expected)
        self.assertEqual(maass_shimura_closed_form(3, 1), expected)

    def test_recursion_matches_closed_form(self):
        for kappa in (2, 3, 6):
            for l in range(5):
                with self.subTest(kappa=kappa, l=l):
                    self.assertEqual(raise_weight_polynomial(kappa, l), maass_shimura_closed_form(kappa, l))

    def test_phi_relation(self):
        self.assertTrue(maass_shimura_phi_relation(2, 1, numeric_points=2))
        self.assertTrue(maass_shimura_phi_relation(2, 2, numeric_points=1, seed=4))
        self.assertTrue(maass_shimura_phi_relation(2, 3, numeric_points=0))


class GridTests(SimpleTestCase):
    def test_confluent_equation_grid(self):
        for k in range(-10, 11):
            for l in range(11):
                with self.subTest(k=k, l=l):
                    self.assertTrue(verify_ode(k, l))

    def test_rotation_grid(self):
        for k in range(-10, 11):
            for l in range(11):
                with self.subTest(k=k, l=l):
                    self.assertTrue(rotation_eigen_check(k, l))

    def test_inner_product_grid(self):
        # |φ'|² is rotation invariant, so one angular node is exact
        for k in range(-5, 6):
            for l in range(6):
                with self.subTest(k=k, l=l):
                    closed = phi_inner_product(k, l)
                    numeric = numeric_inner_product(k, l, angular_nodes=1)
                    self.assertLess(abs(numeric - closed) / closed, 1e-10)
