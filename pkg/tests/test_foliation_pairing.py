import math
import unittest

from quadflat.corpus import corpus, genus2_classes
from quadflat.curves import tighten
from quadflat.foliation_pairing import (
    FoliationSlice, LiouvilleQuadrature, foliation_curve_pairing, liouville_curve_pairing,
    liouville_self_intersection,
)


class QuadratureTest(unittest.TestCase):
    def test_weights(self):
        quadrature = LiouvilleQuadrature(8)
        self.assertEqual(len(quadrature.thetas), 8)
        self.assertAlmostEqual(quadrature.thetas[0], math.pi / 16)
        self.assertAlmostEqual(quadrature.total_weight, math.pi / 2)

    def test_no_samples(self):
        with self.assertRaises(ValueError):
            LiouvilleQuadrature(0)


class FoliationTest(unittest.TestCase):
    def setUp(self):
        self.torus = corpus('torus')

    def test_horizontal_curve(self):
        self.assertAlmostEqual(foliation_curve_pairing(self.torus, math.pi / 2, '+1'), 1.0)
        self.assertAlmostEqual(foliation_curve_pairing(self.torus, 0.0, '+1'), 0.0)

    def test_diagonal_curve(self):
        geodesic = tighten(self.torus, '+1,-0')
        self.assertAlmostEqual(foliation_curve_pairing(self.torus, 0.0, geodesic), 1.0)
        self.assertAlmostEqual(foliation_curve_pairing(self.torus, math.pi / 4, geodesic), 0.0)

    def test_slice(self):
        leaves = FoliationSlice(self.torus, -math.pi / 2)
        self.assertAlmostEqual(leaves.theta, math.pi / 2)
        self.assertAlmostEqual(leaves.pairing('+1'), 1.0)


class LiouvilleTest(unittest.TestCase):
    def test_self_intersection(self):
        value = liouville_self_intersection(corpus('torus'), 2000)
        self.assertLess(abs(value - math.pi / 2), 2e-3)

    def test_self_intersection_scales_with_area(self):
        value = liouville_self_intersection(corpus('lshape'), 2000)
        self.assertLess(abs(value - 3 * math.pi / 2), 6e-3)

    def test_recovers_length(self):
        torus = corpus('torus')
        for word, expected in (('+1', 1.0), ('+1,-0', math.sqrt(2))):
            value = liouville_curve_pairing(torus, word, 10000)
            self.assertLess(abs(value - expected), 1e-3, msg=word)

    def test_recovers_length_through_cone_points(self):
        surface = corpus('genus2:a=1/4')
        for word in genus2_classes(surface):
            geodesic = tighten(surface, word)
            value = liouville_curve_pairing(surface, geodesic, 10000)
            self.assertLess(abs(value - geodesic.length), 1e-3)


if __name__ == '__main__':
    unittest.main()
