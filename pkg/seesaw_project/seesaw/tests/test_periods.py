import math

import mpmath
import sympy
from django.test import SimpleTestCase

from seesaw.exceptions import SeesawError, TruncationError
from seesaw.periods import (OMEGA, TorusEmbedding, circle_integral, cm_point, constant_bundle, finite_torus_factor,
                            fixes_cm_point, iwasawa, null_test, optimal_embedding_report, period_identity_report,
                            period_lhs, period_rhs, weight_of)
from seesaw.qfield import QuadElem
from seesaw.thetalift import LatticeSumConfig

SMALL = LatticeSumConfig(radius=30, prec=96)


class EmbeddingTests(SimpleTestCase):
    def test_cm_point(self):
        self.assertEqual(sympy.simplify(cm_point() - 2 * sympy.I / sympy.sqrt(7)), 0)

    def test_torus_fixes_the_cm_point(self):
        for alpha in (OMEGA, QuadElem.sqrt_u(-7), QuadElem.rational(3, -7) + OMEGA):
            self.assertTrue(fixes_cm_point(alpha))

    def test_embedding_is_multiplicative(self):
        embedding = TorusEmbedding()
        product = embedding.matrix(OMEGA * OMEGA.conj())
        self.assertEqual(product, embedding.matrix(OMEGA) * embedding.matrix(OMEGA.conj()))

    def test_wrong_field(self):
        with self.assertRaises(SeesawError):
            TorusEmbedding().matrix(QuadElem.sqrt_u(-3))

    def test_optimality(self):
        report = {entry["p"]: entry for entry in optimal_embedding_report()}
        self.assertEqual(report[2]["conductor_exponent"], 2)
        self.assertTrue(all(report[p]["optimal"] for p in (3, 5, 7, 11, 13)))
        self.assertTrue(report[7]["in_k0"])


class ConstantTests(SimpleTestCase):
    def test_finite_torus_factor(self):
        self.assertEqual(finite_torus_factor(3), 1)
        self.assertEqual(finite_torus_factor(4), 0)
        self.assertEqual(finite_torus_factor(4, nebentypus_parity=0), 1)

    def test_bundle(self):
        bundle = constant_bundle(3)
        self.assertLess(abs(bundle["product"] - 1 / mpmath.sqrt(7)), mpmath.mpf(10) ** -30)
        self.assertEqual(constant_bundle(4)["product"], 0)

    def test_weights(self):
        self.assertEqual([weight_of(l) for l in range(4)], [3, 5, 7, 9])

    def test_iwasawa_of_a_torus_element(self):
        y0 = 2 / mpmath.sqrt(7)
        h0 = mpmath.diag([mpmath.sqrt(y0), 1 / mpmath.sqrt(y0)])
        x, y, theta = iwasawa(TorusEmbedding().numeric_matrix(0.7) * h0)
        self.assertLess(abs(x), 1e-12)
        self.assertLess(abs(y - y0), 1e-12)
        self.assertLess(abs(theta - 0.7), 1e-12)


class PeriodTests(SimpleTestCase):
    def test_both_sides_agree(self):
        for l in (0, 1):
            with self.subTest(l=l):
                lhs = period_lhs(l, cfg=SMALL)
                rhs = period_rhs(l, cfg=SMALL, depth=3)
                self.assertGreater(abs(lhs), 0)
                self.assertLess(abs(rhs / lhs - 1), 1e-8)

    def test_wrong_weight_vanishes(self):
        lhs = period_lhs(0, cfg=SMALL)
        self.assertLess(abs(null_test(0, SMALL, depth=3)) / abs(lhs), 1e-8)
        self.assertLess(abs(period_lhs(0, m=5, cfg=SMALL)), 1e-20)

    def test_circle_integral(self):
        self.assertLess(abs(circle_integral(0) - 2 * mpmath.pi), 1e-30)
        for frequency in (-3, 1, 2):
            self.assertLess(abs(circle_integral(frequency)), 1e-30)

    def test_higher_raising_and_convergence(self):
        larger = LatticeSumConfig(radius=60, prec=96)
        for l in (2, 3):
            with self.subTest(l=l):
                lhs = period_lhs(l, cfg=SMALL)
                rhs = period_rhs(l, cfg=SMALL, depth=3)
                self.assertLess(abs(rhs / lhs - 1), 1e-8)
                refined = period_rhs(l, cfg=larger, depth=4)
                self.assertLess(abs(refined / rhs - 1), 1e-10)
                self.assertLess(abs(period_lhs(l, cfg=larger) / lhs - 1), 1e-10)

    def test_report(self):
        reports = period_identity_report(l_max=1, cfg=SMALL, depth=3)
        self.assertEqual([report.l for report in reports], [0, 1])
        self.assertEqual(reports[1].diagnostics["weight"], 5)
        self.assertIsInstance(reports[0].lhs, mpmath.mpc)
        self.assertTrue(reports[0].diagnostics["circle_integral"].startswith("6.28318530717"))
        self.assertTrue(math.isclose(reports[0].ratio.real, 1, rel_tol=1e-6))

    def test_report_range(self):
        with self.assertRaises(SeesawError):
            period_identity_report(l_max=4)

    def test_truncated_lattice_is_rejected(self):
        with self.assertRaises(TruncationError):
            period_rhs(0, cfg=LatticeSumConfig(radius=2), depth=2)
