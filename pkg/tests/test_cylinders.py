import math
import unittest

from quadflat.corpus import corpus
from quadflat.curves import CurveWord, length
from quadflat.cylinders import cylinder_curves_up_to, cylinder_decomposition, diameter_estimate
from quadflat.errors import NotPeriodic
from quadflat.flat_geometry import Direction


class DecompositionTest(unittest.TestCase):
    def test_torus_horizontal(self):
        cylinders = cylinder_decomposition(corpus('torus'), (1, 0))
        self.assertEqual(len(cylinders), 1)
        cylinder = cylinders[0]
        self.assertEqual(cylinder.circumference2, 1)
        self.assertAlmostEqual(cylinder.height, 1.0, places=12)
        self.assertAlmostEqual(cylinder.modulus, 1.0, places=12)
        self.assertEqual(cylinder.core.canonical(), CurveWord.parse('+1').canonical())
        self.assertEqual(cylinder.direction, Direction(1, 0))

    def test_torus_diagonal(self):
        cylinders = cylinder_decomposition(corpus('torus'), Direction(-1, -1))
        self.assertEqual(len(cylinders), 1)
        self.assertEqual(cylinders[0].circumference2, 2)
        self.assertAlmostEqual(cylinders[0].area, 1.0, places=9)

    def test_lshape_horizontal(self):
        cylinders = cylinder_decomposition(corpus('lshape'), (1, 0))
        self.assertEqual([c.circumference2 for c in cylinders], [1, 4])
        for cylinder in cylinders:
            self.assertAlmostEqual(cylinder.height, 1.0, places=12)
        self.assertAlmostEqual(math.fsum(c.area for c in cylinders), 3.0, places=9)

    def test_lshape_boundaries(self):
        cylinders = cylinder_decomposition(corpus('lshape'), (0, 1), threads=2)
        self.assertEqual(len(cylinders), 2)
        for cylinder in cylinders:
            self.assertTrue(cylinder.boundary_left)
            self.assertTrue(cylinder.boundary_right)

    def test_boundary_sides(self):
        # each side of a cylinder is a chain of saddle connections as long as
        # its circumference
        for direction in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            for cylinder in cylinder_decomposition(corpus('lshape'), direction):
                for traces in (cylinder.boundary_left, cylinder.boundary_right):
                    self.assertAlmostEqual(math.fsum(trace.length for trace in traces),
                                           cylinder.circumference, places=9,
                                           msg="{} {}".format(direction, cylinder))

    def test_lshape_diagonal_covers_area(self):
        cylinders = cylinder_decomposition(corpus('lshape'), (1, 1))
        self.assertTrue(cylinders)
        self.assertAlmostEqual(math.fsum(c.area for c in cylinders), 3.0, places=9)
        for cylinder in cylinders:
            self.assertEqual(cylinder.direction, Direction(1, 1))

    def test_cap(self):
        with self.assertRaises(NotPeriodic):
            cylinder_decomposition(corpus('torus'), (1, 0), cap=0.5)

    def test_long_direction_capped(self):
        with self.assertRaises(NotPeriodic):
            cylinder_decomposition(corpus('torus'), (7, 5), cap=3)

    def test_diameter_estimate(self):
        self.assertAlmostEqual(diameter_estimate(corpus('torus')), math.sqrt(2))


class CurvesUpToTest(unittest.TestCase):
    def test_torus(self):
        curves = cylinder_curves_up_to(corpus('torus'), 1.5)
        lengths = [l for _, l in curves]
        self.assertEqual(len(lengths), 4)
        for found, expected in zip(lengths, [1, 1, math.sqrt(2), math.sqrt(2)]):
            self.assertAlmostEqual(found, expected, places=12)

    def test_cores_are_tight(self):
        surface = corpus('torus')
        for word, l in cylinder_curves_up_to(surface, 1.5):
            self.assertAlmostEqual(length(surface, word), l, places=9)

    def test_lshape(self):
        curves = cylinder_curves_up_to(corpus('lshape'), 1.5, threads=2)
        lengths = [l for _, l in curves]
        self.assertAlmostEqual(lengths[0], 1.0, places=12)
        self.assertAlmostEqual(lengths[1], 1.0, places=12)
        self.assertLessEqual(max(lengths), 1.5 + 1e-9)
        keys = [word.canonical() for word, _ in curves]
        self.assertEqual(len(keys), len(set(keys)))

    def test_below_systole(self):
        self.assertEqual(cylinder_curves_up_to(corpus('torus'), 0.5), [])


if __name__ == '__main__':
    unittest.main()
