from fractions import Fraction

import mpmath
import numpy as np
from django.test import SimpleTestCase

from seesaw.exceptions import BruhatPatternError, NormMismatchError, SeesawError
from seesaw.hecke import unramified_split_character
from seesaw.qfield import INFINITY, Place, QuadElem
from seesaw.weilrep import (D, U, W, MatE, SplitValue, bruhat_decompose, bs_prime_value, bs_value, build_g,
                            build_gprime, compat_ratio, compat_suite, compat_target, evaluate_at_real_place,
                            evaluate_at_split_prime, gamma_at, is_unitary, pwp_suite, random_element, s_hat_diag,
                            s_hat_from_witness, s_hat_one_zeta, table_invariants, weyl_word_value)

U7 = -7
ALPHA = QuadElem(Fraction(1), Fraction(1), U7)
# γ/γ̄ for γ = 1 + √−7
ZETA = QuadElem(Fraction(-3, 4), Fraction(1, 4), U7)


def rational(value):
    return QuadElem.rational(value, U7)


class BruhatTests(SimpleTestCase):
    pairs = {
        'a': (rational(3), rational(3)),
        'b': (ALPHA, ALPHA),
        'c': (ALPHA, ALPHA.conj()),
        'd': (rational(1), ZETA),
    }

    def test_torus_images_are_unitary(self):
        for alpha, beta in self.pairs.values():
            self.assertTrue(is_unitary(build_g(alpha, beta)))
            self.assertTrue(is_unitary(build_gprime(alpha, beta)))

    def test_decomposition_matches_table(self):
        for expected_case, (alpha, beta) in self.pairs.items():
            for primed, builder in ((False, build_g), (True, build_gprime)):
                with self.subTest(case=expected_case, primed=primed):
                    data = bruhat_decompose(builder(alpha, beta))
                    case, x, j = table_invariants(alpha, beta, primed=primed)
                    self.assertEqual(data.case, expected_case)
                    self.assertEqual((data.case, data.x, data.j), (case, x, j))
                    self.assertTrue(data.consistent)

    def test_exchanged_pairs_count(self):
        self.assertEqual(bruhat_decompose(build_g(*self.pairs['a'])).j, 0)
        self.assertEqual(bruhat_decompose(build_g(*self.pairs['d'])).j, 2)

    def test_off_pattern_entry_is_rejected(self):
        broken = MatE.identity(U7, 1).replace({(0, 1): rational(1)})
        with self.assertRaises(BruhatPatternError):
            bruhat_decompose(broken)

    def test_norms_must_agree(self):
        with self.assertRaises(NormMismatchError):
            build_g(rational(1), rational(2))


class SplittingTests(SimpleTestCase):
    def test_symbols_square_to_one(self):
        value = SplitValue.symbol(3, U7) * SplitValue.symbol(3, U7)
        self.assertEqual(value.hilbert, frozenset())

    def test_gamma_squared_is_a_symbol(self):
        value = SplitValue.gamma() * SplitValue.gamma()
        self.assertEqual(value.gamma_exponent, 0)
        self.assertEqual(len(value.hilbert), 1)

    def test_rational_diagonal(self):
        value = s_hat_diag(rational(2))
        self.assertEqual(value.xi_arg, rational(Fraction(1, 2)))
        self.assertEqual(value.gamma_exponent, 0)

    def test_witness_with_two_exchanges_carries_no_gamma(self):
        data = bruhat_decompose(build_g(rational(1), ZETA))
        self.assertEqual(s_hat_from_witness(data).gamma_exponent, 0)

    def test_compatibility_on_fixed_pairs(self):
        for alpha, beta in ((ALPHA, ALPHA), (ALPHA, ALPHA.conj()), (rational(1), ZETA), (rational(5), rational(-5))):
            with self.subTest(alpha=str(alpha), beta=str(beta)):
                self.assertTrue(compat_ratio(alpha, beta).agrees_with(compat_target(alpha, beta)))

    def test_weyl_word_is_trivial(self):
        for a in (1, 2, Fraction(-3, 5)):
            self.assertTrue(weyl_word_value(a).is_trivial())
            self.assertTrue(weyl_word_value(a, primed=True).is_trivial())

    def test_element_values(self):
        self.assertTrue(bs_value(D(1, 1)).is_trivial())
        self.assertTrue(bs_value(U(4)).is_trivial())
        self.assertEqual(bs_value(W()).gamma_exponent, 1)
        self.assertEqual(bs_value(D(2, Fraction(1, 2))).xi_arg, rational(Fraction(1, 2)))
        self.assertEqual(bs_prime_value(D(2, Fraction(1, 2))).xi_prime_arg, rational(Fraction(1, 2)))
        with self.assertRaises(SeesawError):
            bs_value(U(1), alpha=ALPHA)
        with self.assertRaises(NormMismatchError):
            bs_value(D(2, 2))


class WitnessClosedFormTests(SimpleTestCase):
    """ŝ read off the Bruhat witness against the closed forms for the two factors of g."""

    # (−1, −u)_F with u = −7; nontrivial at 2 and 7
    SINGLE_EXCHANGE_SYMBOL = SplitValue.symbol(-1, 7, U7)

    def test_random_factors(self):
        rng = np.random.default_rng(23)
        samples = [(rational(3), rational(1)), (ALPHA, ZETA)]
        for _ in range(60):
            gamma = random_element(rng, bound=10)
            samples.append((random_element(rng, bound=10), gamma / gamma.conj()))
        exchanges = set()
        for alpha, zeta in samples:
            for primed, builder in ((False, build_g), (True, build_gprime)):
                diagonal = bruhat_decompose(builder(alpha, alpha))
                norm_one = bruhat_decompose(builder(rational(1), zeta))
                exchanges.update((diagonal.j, norm_one.j))
                with self.subTest(alpha=str(alpha), zeta=str(zeta), primed=primed):
                    closed = s_hat_diag(alpha, primed=primed)
                    witness = s_hat_from_witness(diagonal, primed=primed)
                    if diagonal.j == 1:
                        self.assertFalse(witness.agrees_with(closed))
                        witness = witness * self.SINGLE_EXCHANGE_SYMBOL
                    self.assertTrue(witness.agrees_with(closed))
                    self.assertNotEqual(norm_one.j, 1)
                    self.assertTrue(s_hat_from_witness(norm_one, primed=primed).agrees_with(
                        s_hat_one_zeta(zeta, primed=primed)))
        self.assertEqual(exchanges, {0, 1, 2})


class EvaluationTests(SimpleTestCase):
    def test_weil_index(self):
        self.assertEqual(gamma_at(INFINITY), Fraction(3, 4))
        self.assertEqual(gamma_at(Place(3)), 0)
        with self.assertRaises(SeesawError):
            gamma_at(Place(7))

    def test_gamma_at_the_real_place(self):
        value = evaluate_at_real_place(SplitValue.gamma())
        self.assertLess(abs(value - mpmath.mpc(0, -1)), mpmath.mpf(10) ** -30)

    def test_split_prime_angles_agree(self):
        xi = unramified_split_character(11, Fraction(1, 12))
        xi_prime = unramified_split_character(11, Fraction(5, 12))
        ratio = compat_ratio(ALPHA, ALPHA.conj())
        target = compat_target(ALPHA, ALPHA.conj())
        self.assertEqual(evaluate_at_split_prime(ratio, xi, xi_prime), evaluate_at_split_prime(target, xi, xi_prime))

    def test_characters_at_different_primes(self):
        with self.assertRaises(SeesawError):
            evaluate_at_split_prime(SplitValue.one(), unramified_split_character(11, 0),
                                    unramified_split_character(23, 0))


class SuiteTests(SimpleTestCase):
    def test_pwp_suite(self):
        result = pwp_suite(40, seed=3)
        self.assertTrue(result['passed'], result['failures'])
        self.assertEqual(sum(result['coverage'].values()), 40)

    def test_compat_suite(self):
        result = compat_suite(20, seed=5)
        self.assertTrue(result['passed'], result['failures'])
        self.assertEqual(result['evaluations'], 80)

    def test_pwp_suite_at_full_size(self):
        result = pwp_suite(1000, seed=1)
        self.assertTrue(result['passed'], result['failures'][:5])
        self.assertEqual(sum(result['coverage'].values()), 1000)
        self.assertTrue(all(result['coverage'].values()), result['coverage'])

    def test_compat_suite_at_full_size(self):
        result = compat_suite(1000, seed=1)
        self.assertTrue(result['passed'], result['failures'][:5])
        self.assertEqual(result['evaluations'], 4000)
