import math
import unittest
from fractions import Fraction

from quadflat.corpus import (
    CorpusEntry, corpus, corpus_entry, family_pair, genus2_classes, split_point, torus,
)
from quadflat.curves import is_simple, tighten
from quadflat.errors import ConstraintFailure, UnknownCorpusEntry
from quadflat.surface_model import validate


class EntryTest(unittest.TestCase):
    def test_torus(self):
        entry = corpus_entry('torus')
        self.assertEqual((entry.genus, entry.area, entry.multiples), (1, 1, [2]))
        self.assertEqual(str(entry), 'torus genus 1 area 1 cone angles 2pi')

    def test_lshape(self):
        report = validate(corpus('lshape'))
        self.assertTrue(report.ok)
        self.assertEqual((report.genus, report.area), (2, 3))
        self.assertEqual(report.angle_multiples(), [6])

    def test_genus2_name(self):
        entry = corpus_entry('genus2:a=2/8')
        self.assertEqual(entry.name, 'genus2:a=1/4')
        self.assertEqual(entry.parameters, {'a': Fraction(1, 4)})

    def test_unknown(self):
        for name in ('sphere', 'torus:a=1', 'genus2', 'genus2:b=1/4', 'genus2:a', 'genus2:a=x',
                     ''):
            with self.assertRaises(UnknownCorpusEntry, msg=name):
                corpus_entry(name)

    def test_constraint_failure(self):
        entry = CorpusEntry('torus', {}, 2, 1, [2], torus)
        with self.assertRaises(ConstraintFailure):
            entry.build()


class Genus2Test(unittest.TestCase):
    def test_split_point(self):
        t = split_point(Fraction(1, 4))
        self.assertAlmostEqual(float(t), math.sqrt(2) / 4, places=12)
        self.assertLessEqual(t.denominator, 10**12)

    def test_out_of_range(self):
        for s in (0, Fraction(-1, 4), Fraction(3, 4), Fraction(1)):
            with self.assertRaises(ConstraintFailure):
                split_point(s)
        with self.assertRaises(ConstraintFailure):
            corpus('genus2:a=3/4')

    def test_shape(self):
        surface = corpus('genus2:a=1/4')
        report = validate(surface)
        self.assertEqual(report.genus, 2)
        self.assertEqual(report.area, 1)
        self.assertEqual(report.angle_multiples(), [4, 4])
        self.assertEqual(surface.name, 'genus2:a=1/4')

    def test_classes(self):
        s = 0.25
        surface = corpus('genus2:a=1/4')
        second_fourth, first_third = genus2_classes(surface)
        self.assertAlmostEqual(tighten(surface, second_fourth).length, 2 * s, places=9)
        self.assertAlmostEqual(tighten(surface, first_third).length,
                               2 * (1 / math.sqrt(2) - s), places=9)
        self.assertTrue(is_simple(surface, second_fourth))
        self.assertTrue(is_simple(surface, first_third))

    def test_classes_are_singular(self):
        surface = corpus('genus2:a=1/3')
        for word in genus2_classes(surface):
            geodesic = tighten(surface, word)
            self.assertEqual(len(geodesic.visits), 2)
            for visit in geodesic.visits:
                self.assertAlmostEqual(visit.left_angle, 2 * math.pi, places=9)
                self.assertAlmostEqual(visit.right_angle, 2 * math.pi, places=9)


class FamilyPairTest(unittest.TestCase):
    def test_pair(self):
        self.assertEqual(family_pair('genus2:a=1/4,b=1/3'), (Fraction(1, 4), Fraction(1, 3)))
        self.assertEqual(family_pair('genus2:b=1/3,a=1/4'), (Fraction(1, 4), Fraction(1, 3)))

    def test_bad_pair(self):
        for text in ('torus:a=1,b=2', 'genus2:a=1/4', 'genus2:a=1/4,b=1/3,c=1'):
            with self.assertRaises(UnknownCorpusEntry, msg=text):
                family_pair(text)


if __name__ == '__main__':
    unittest.main()
