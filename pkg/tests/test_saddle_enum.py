import math
import unittest
from fractions import Fraction

from quadflat.corpus import corpus
from quadflat.errors import CapTooLarge
from quadflat.saddle_enum import saddle_connections


def visible_lattice_points(bound):
    """Canonical primitive vectors of the square lattice up to length bound."""
    points = set()
    n = int(bound)
    for p in range(-n, n + 1):
        for q in range(0, n + 1):
            if q == 0 and p <= 0:
                continue
            if math.gcd(p, q) == 1 and p * p + q * q <= bound * bound:
                points.add((p, q))
    return points


class TorusTest(unittest.TestCase):
    def setUp(self):
        self.torus = corpus('torus')

    def test_short(self):
        connections = saddle_connections(self.torus, 1.5)
        self.assertEqual([str(sc.direction) for sc in connections],
                         ['(0, 1)', '(1, 0)', '(-1, 1)', '(1, 1)'])
        self.assertEqual([sc.length2 for sc in connections], [1, 1, 2, 2])
        for sc in connections:
            self.assertEqual((sc.src, sc.dst), (0, 0))

    def test_below_systole(self):
        self.assertEqual(saddle_connections(self.torus, 0.5), [])
        self.assertEqual(saddle_connections(self.torus, 0), [])

    def test_lattice_oracle(self):
        connections = saddle_connections(self.torus, 5)
        found = {(int(sc.holonomy[0]), int(sc.holonomy[1])) for sc in connections}
        self.assertEqual(len(found), len(connections))
        self.assertEqual(found, visible_lattice_points(5))

    def test_threads(self):
        single = saddle_connections(self.torus, 4)
        threaded = saddle_connections(self.torus, 4, threads=3)
        self.assertEqual([sc.holonomy for sc in single], [sc.holonomy for sc in threaded])

    def test_budget(self):
        with self.assertRaises(CapTooLarge):
            saddle_connections(self.torus, 50, budget=10)


class LShapeTest(unittest.TestCase):
    def setUp(self):
        self.lshape = corpus('lshape')

    def test_unit_length(self):
        connections = saddle_connections(self.lshape, 1)
        self.assertEqual(len(connections), 6)
        self.assertEqual(sorted(str(sc.direction) for sc in connections),
                         ['(0, 1)'] * 3 + ['(1, 0)'] * 3)

    def test_monotone_in_bound(self):
        short = {(sc.source, sc.target) for sc in saddle_connections(self.lshape, 2)}
        long = {(sc.source, sc.target) for sc in saddle_connections(self.lshape, 4)}
        self.assertLess(short, long)

    def test_sorted_and_bounded(self):
        connections = saddle_connections(self.lshape, 3)
        lengths = [sc.length2 for sc in connections]
        self.assertEqual(lengths, sorted(lengths))
        self.assertLessEqual(max(lengths), 9)
        for sc in connections:
            self.assertTrue(sc.holonomy[1] > 0 or (sc.holonomy[1] == 0 and sc.holonomy[0] > 0))


class Genus2Test(unittest.TestCase):
    def test_two_cone_points(self):
        surface = corpus('genus2:a=1/4')
        connections = saddle_connections(surface, 1)
        self.assertTrue(connections)
        self.assertEqual({sc.src for sc in connections} | {sc.dst for sc in connections},
                         {0, 1})
        for sc in connections:
            self.assertLessEqual(sc.length2, 1)
            self.assertEqual(sc.length2, surface.scale2 * (sc.holonomy[0] ** 2 +
                                                           sc.holonomy[1] ** 2))

    def test_scale(self):
        surface = corpus('genus2:a=1/4')
        self.assertEqual(surface.scale2, Fraction(1, 2))


if __name__ == '__main__':
    unittest.main()
