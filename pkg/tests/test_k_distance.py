import math
import unittest
from fractions import Fraction

from quadflat.corpus import corpus, genus2_classes
from quadflat.curves import CurveWord
from quadflat.errors import ConstraintFailure, EmptyCandidates, MarkingMismatch, NotFound
from quadflat.k_distance import (
    EXACT, LOWER_BOUND, MarkedPair, asymmetry_report, ball_asymmetry, candidate_pool,
    find_longer_curve, k_exact_linear, lipschitz_upper_bound, ratio_lower_bound,
)
from quadflat.surface_model import LinearDeformation

SIDE = 1 / math.sqrt(2)
A, B = Fraction(1, 4), Fraction(1, 3)


class MarkedPairTest(unittest.TestCase):
    def test_mismatch(self):
        with self.assertRaises(MarkingMismatch):
            MarkedPair(corpus('torus'), corpus('lshape'))

    def test_normalized(self):
        pair = MarkedPair(corpus('lshape'), corpus('lshape'))
        self.assertEqual(pair.first.scale2, Fraction(1, 3))
        self.assertTrue(pair.identical)
        self.assertIsNone(pair.upper_bound)

    def test_swapped(self):
        pair = MarkedPair.linear(corpus('torus'), LinearDeformation.diagonal(2))
        swapped = pair.swapped()
        self.assertIs(swapped.first, pair.second)
        self.assertEqual(swapped.deformation.matrix,
                         LinearDeformation.diagonal(Fraction(1, 2)).matrix)


class TorusTest(unittest.TestCase):
    def setUp(self):
        self.torus = corpus('torus')

    def test_identical(self):
        pair = MarkedPair(self.torus, self.torus)
        report = ratio_lower_bound(pair, 1.5)
        self.assertAlmostEqual(report.ratio, 1.0, places=12)
        self.assertEqual(report.status, LOWER_BOUND)
        self.assertEqual(report.candidates, 4)
        with self.assertRaises(NotFound) as context:
            find_longer_curve(pair, 2)
        self.assertTrue(context.exception.identical)

    def test_diagonal(self):
        pair = MarkedPair.linear(self.torus, LinearDeformation.diagonal(2))
        report = ratio_lower_bound(pair, 1.5)
        self.assertAlmostEqual(report.ratio, 2.0, places=12)
        self.assertAlmostEqual(report.K, math.log(2), places=12)
        self.assertEqual(report.witness.canonical(), CurveWord.parse('+1').canonical())
        ratios = [row.ratio for row in report.table]
        self.assertEqual(ratios, sorted(ratios, reverse=True))

    def test_symmetric(self):
        pair = MarkedPair.linear(self.torus, LinearDeformation.diagonal(2))
        forward, backward = asymmetry_report(pair, 1.5)
        self.assertAlmostEqual(forward.ratio, backward.ratio, places=9)
        self.assertEqual(backward.witness.canonical(), CurveWord.parse('-0').canonical())

    def test_exact(self):
        report = k_exact_linear(self.torus, LinearDeformation.diagonal(2))
        self.assertEqual(report.status, EXACT)
        self.assertAlmostEqual(report.K, math.log(2), places=12)
        self.assertAlmostEqual(report.found_ratio, 2.0, places=12)
        self.assertTrue(report.certified)

    def test_rotation(self):
        rotation = LinearDeformation.rotation(Fraction(3, 5), Fraction(4, 5))
        report = k_exact_linear(self.torus, rotation)
        self.assertAlmostEqual(report.K, 0.0, places=12)
        pair = MarkedPair.linear(self.torus, rotation)
        self.assertFalse(pair.identical)
        with self.assertRaises(NotFound) as context:
            find_longer_curve(pair, 1.5)
        self.assertFalse(context.exception.identical)

    def test_longer(self):
        pair = MarkedPair.linear(self.torus, LinearDeformation.diagonal(2))
        word = find_longer_curve(pair, 1.5)
        self.assertIn(word.canonical(), {CurveWord.parse('+1').canonical(),
                                         CurveWord.parse('+1,-0').canonical(),
                                         CurveWord.parse('+0,+1').canonical()})

    def test_empty(self):
        pair = MarkedPair(self.torus, self.torus)
        with self.assertRaises(EmptyCandidates):
            ratio_lower_bound(pair, 0.5)

    def test_extra_first(self):
        pair = MarkedPair(self.torus, self.torus)
        pool = candidate_pool(pair, 1.5, extra=['+1,+1,-0'])
        self.assertEqual(pool[0], CurveWord.parse('+1,+1,-0'))
        self.assertEqual(len(pool), 5)


class Genus2Test(unittest.TestCase):
    def test_upper_bound(self):
        self.assertAlmostEqual(lipschitz_upper_bound(A, B), 4 / 3, places=12)
        self.assertAlmostEqual(lipschitz_upper_bound(B, A), (SIDE - A) / (SIDE - B), places=12)
        with self.assertRaises(ConstraintFailure):
            lipschitz_upper_bound(A, 1)

    def test_asymmetry(self):
        pair = MarkedPair.genus2(A, B)
        self.assertEqual(pair.family, (A, B))
        forward, backward = asymmetry_report(pair, 1)
        second_fourth, first_third = genus2_classes(pair.first)
        self.assertAlmostEqual(forward.ratio, 4 / 3, places=9)
        self.assertEqual(forward.witness, second_fourth)
        self.assertAlmostEqual(backward.ratio, (SIDE - A) / (SIDE - B), places=9)
        self.assertEqual(backward.witness, first_third)
        self.assertGreater(abs(forward.ratio - backward.ratio), 1e-3)
        self.assertTrue(forward.certified)
        self.assertTrue(backward.certified)
        self.assertEqual(forward.status, LOWER_BOUND)

    def test_longer_both_ways(self):
        pair = MarkedPair.genus2(A, B)
        second_fourth, first_third = genus2_classes(pair.first)
        self.assertEqual(find_longer_curve(pair, 2), second_fourth)
        self.assertEqual(find_longer_curve(pair.swapped(), 2), first_third)

    def test_ball(self):
        table = ball_asymmetry([A, B], 1)
        self.assertEqual(set(table), {(A, B), (B, A)})
        self.assertAlmostEqual(table[(A, B)], 4 / 3, places=9)
        self.assertAlmostEqual(table[(B, A)], (SIDE - A) / (SIDE - B), places=9)


if __name__ == '__main__':
    unittest.main()
