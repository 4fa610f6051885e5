import math
import unittest
from fractions import Fraction

from quadflat import geometry
from quadflat.geometry import Isometry, vec


class RationalLiteralTest(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(geometry.parse_rational('6/8'), Fraction(3, 4))
        self.assertEqual(geometry.parse_rational(' -2 '), Fraction(-2))
        self.assertEqual(geometry.parse_rational('1 / 3'), Fraction(1, 3))

    def test_parse_rejects(self):
        for text in ('1/0', '0.5', 'x', '', '1/-2'):
            with self.assertRaises(ValueError):
                geometry.parse_rational(text)

    def test_str(self):
        self.assertEqual(geometry.rational_str(Fraction(4, 2)), '2')
        self.assertEqual(geometry.rational_str(Fraction(-3, 6)), '-1/2')


class PredicateTest(unittest.TestCase):
    def test_orientation(self):
        a, b = vec(0, 0), vec(1, 0)
        self.assertEqual(geometry.orientation(a, b, vec(1, 1)), 1)
        self.assertEqual(geometry.orientation(a, b, vec(1, -1)), -1)
        self.assertEqual(geometry.orientation(a, b, vec(3, 0)), 0)

    def test_signed_area(self):
        square = [vec(0, 0), vec(1, 0), vec(1, 1), vec(0, 1)]
        self.assertEqual(geometry.signed_area2(square), 2)
        self.assertEqual(geometry.signed_area2(list(reversed(square))), -2)

    def test_on_segment(self):
        self.assertTrue(geometry.on_segment(vec(1, 1), vec(0, 0), vec(2, 2)))
        self.assertTrue(geometry.on_segment(vec(2, 2), vec(0, 0), vec(2, 2)))
        self.assertFalse(geometry.on_segment(vec(3, 3), vec(0, 0), vec(2, 2)))

    def test_segment_distance(self):
        self.assertEqual(geometry.segment_distance2(vec(1, 2), vec(0, 0), vec(2, 0)), 4)
        self.assertEqual(geometry.segment_distance2(vec(3, 1), vec(0, 0), vec(2, 0)), 2)

    def test_segments_cross(self):
        self.assertTrue(geometry.segments_cross(vec(0, 0), vec(2, 2), vec(0, 2), vec(2, 0)))
        self.assertTrue(geometry.segments_cross(vec(0, 0), vec(2, 0), vec(2, 0), vec(3, 1)))
        self.assertFalse(geometry.segments_cross(vec(0, 0), vec(1, 0), vec(0, 1), vec(1, 1)))

    def test_line_parameters(self):
        s, t = geometry.line_parameters(vec(0, 0), vec(1, 1), vec(0, 2), vec(1, -1))
        self.assertEqual((s, t), (1, 1))
        self.assertIsNone(geometry.line_parameters(vec(0, 0), vec(1, 1), vec(0, 1), vec(2, 2)))

    def test_in_sector_is_half_open(self):
        start, end = vec(1, 0), vec(0, 1)
        self.assertTrue(geometry.in_sector(vec(1, 0), start, end))
        self.assertTrue(geometry.in_sector(vec(1, 1), start, end))
        self.assertFalse(geometry.in_sector(vec(0, 1), start, end))
        self.assertFalse(geometry.in_sector(vec(-1, 0), start, end))

    def test_pseudo_angle_is_monotone(self):
        start = vec(1, 0)
        keys = [geometry.pseudo_angle(start, v)
                for v in (vec(1, 0), vec(2, 1), vec(0, 1), vec(-1, 1), vec(-1, 0))]
        self.assertEqual(keys, sorted(keys))
        self.assertEqual(keys[0], 0)
        self.assertEqual(keys[-1], 2)

    def test_angles(self):
        self.assertAlmostEqual(geometry.ccw_angle(vec(1, 0), vec(0, -1)), 1.5 * math.pi)
        self.assertAlmostEqual(geometry.angle_between(vec(1, 0), vec(0, -1)), 0.5 * math.pi)
        self.assertAlmostEqual(geometry.length(vec(3, 4)), 5)


class IsometryTest(unittest.TestCase):
    def test_translation(self):
        shift = Isometry.translation(vec(1, 2))
        self.assertEqual(shift(vec(1, 1)), (2, 3))
        self.assertEqual(shift.linear(vec(1, 1)), (1, 1))
        self.assertTrue(shift.compose(shift.inverse()).is_identity())

    def test_rotation(self):
        turn = Isometry.rotation_pi(vec(Fraction(1, 2), 0))
        self.assertEqual(turn(vec(0, 0)), (1, 0))
        self.assertEqual(turn.linear(vec(1, 1)), (-1, -1))
        self.assertTrue(turn.power(2).is_identity())
        self.assertEqual(turn.inverse(), turn)

    def test_compose_order(self):
        shift = Isometry.translation(vec(1, 0))
        turn = Isometry.rotation_pi(vec(0, 0))
        p = vec(2, 3)
        self.assertEqual(turn.compose(shift)(p), turn(shift(p)))
        self.assertEqual(shift.compose(turn)(p), shift(turn(p)))

    def test_power(self):
        shift = Isometry.translation(vec(1, 0))
        self.assertEqual(shift.power(3), Isometry.translation(vec(3, 0)))
        self.assertEqual(shift.power(-2), Isometry.translation(vec(-2, 0)))
        self.assertEqual(repr(shift), "Isometry(1, (1, 0))")


if __name__ == '__main__':
    unittest.main()
