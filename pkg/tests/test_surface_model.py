import json
import math
import unittest
from fractions import Fraction

from quadflat.corpus import corpus
from quadflat.errors import ConstraintFailure, InvalidSurface, ParseError
from quadflat.surface_model import (
    ROTATION_PI, Gluing, HalfTranslationSurface, LinearDeformation, apply_linear, area,
    load_surface, normalize_area, require_valid, saddle_length_after, same_combinatorics,
    serialize, validate, vertex_classes,
)

TORUS_DOCUMENT = """{
  "name": "torus",
  "polygons": [[[0, 0], [1, 0], [1, 1], [0, 1]]],
  "gluings": [{"from": [0, 0], "to": [0, 2]}, {"from": [0, 1], "to": [0, 3]}]
}
"""


def pillowcase():
    """Sphere with four cone points of angle π, glued by rotations."""
    rectangle = [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1)]
    gluings = [Gluing((0, 0), (0, 1), ROTATION_PI), Gluing((0, 3), (0, 4), ROTATION_PI),
               Gluing((0, 2), (0, 5))]
    return HalfTranslationSurface([rectangle], gluings, name='pillowcase')


class LoadTest(unittest.TestCase):
    def test_load(self):
        surface = load_surface(TORUS_DOCUMENT)
        self.assertEqual(surface.name, 'torus')
        self.assertEqual(surface.polygons[0][2], (1, 1))
        self.assertEqual(len(surface.gluings), 2)
        self.assertEqual(surface.scale2, 1)

    def test_round_trip(self):
        for name in ('torus', 'lshape', 'genus2:a=1/4'):
            surface = corpus(name)
            self.assertEqual(load_surface(serialize(surface)), surface)
        surface = pillowcase()
        self.assertEqual(load_surface(serialize(surface)), surface)

    def test_serialize_is_canonical(self):
        data = json.loads(serialize(corpus('genus2:a=1/4')))
        self.assertEqual(data['scale2'], '1/2')
        self.assertEqual(data['gluings'][0], {'from': [0, 0], 'to': [1, 4], 'map': 'translation'})

    def test_missing_field(self):
        with self.assertRaises(ParseError) as context:
            load_surface('{"polygons": []}')
        self.assertEqual(context.exception.field, 'gluings')

    def test_bad_json(self):
        with self.assertRaises(ParseError) as context:
            load_surface('{\n"polygons": [,\n}')
        self.assertEqual(context.exception.line, 2)

    def test_bad_point(self):
        document = TORUS_DOCUMENT.replace('[1, 1]', '["1/0", 1]')
        with self.assertRaises(ParseError) as context:
            load_surface(document)
        self.assertEqual(context.exception.field, 'polygons[0][2]')

    def test_parse_error_is_value_error(self):
        with self.assertRaises(ValueError):
            load_surface('[]')


class ValidateTest(unittest.TestCase):
    def test_torus(self):
        report = validate(load_surface(TORUS_DOCUMENT))
        self.assertTrue(report.ok)
        self.assertEqual(report.genus, 1)
        self.assertEqual(report.area, 1)
        self.assertEqual(report.angle_multiples(), [2])
        self.assertEqual(len(report.warnings), 1)

    def test_lshape(self):
        report = validate(corpus('lshape'))
        self.assertTrue(report.ok)
        self.assertEqual(report.genus, 2)
        self.assertEqual(report.area, 3)
        self.assertEqual(report.angle_multiples(), [6])
        self.assertAlmostEqual(report.cone_points[0].angle, 6 * math.pi)

    def test_pillowcase(self):
        report = validate(pillowcase())
        self.assertTrue(report.ok, report.diagnostics)
        self.assertEqual(report.genus, 0)
        self.assertEqual(report.angle_multiples(), [1, 1, 1, 1])
        self.assertEqual(report.area, 2)

    def test_holonomy_mismatch(self):
        square = [(0, 0), (2, 0), (2, 1), (0, 1)]
        surface = HalfTranslationSurface(
            [square], [Gluing((0, 0), (0, 1)), Gluing((0, 2), (0, 3))])
        report = validate(surface)
        self.assertFalse(report.ok)
        self.assertTrue(any('holonomy mismatch' in d for d in report.diagnostics))

    def test_edge_glued_twice(self):
        square = [(0, 0), (1, 0), (1, 1), (0, 1)]
        surface = HalfTranslationSurface(
            [square], [Gluing((0, 0), (0, 2)), Gluing((0, 1), (0, 3)), Gluing((0, 0), (0, 2))])
        report = validate(surface)
        self.assertFalse(report.ok)
        self.assertIn("edge 0:0 appears 2 times in gluings", report.diagnostics)

    def test_clockwise_polygon(self):
        square = [(0, 0), (0, 1), (1, 1), (1, 0)]
        surface = HalfTranslationSurface(
            [square], [Gluing((0, 0), (0, 2)), Gluing((0, 1), (0, 3))])
        report = validate(surface)
        self.assertFalse(report.ok)
        self.assertIn("polygon 0 is not counterclockwise", report.diagnostics)
        with self.assertRaises(InvalidSurface) as context:
            require_valid(surface)
        self.assertIs(context.exception.report.ok, False)

    def test_boundary(self):
        square = [(0, 0), (1, 0), (1, 1), (0, 1)]
        surface = HalfTranslationSurface([square], [Gluing((0, 1), (0, 3))],
                                         boundary=[(0, 0), (0, 2)])
        report = validate(surface)
        self.assertTrue(report.ok)
        self.assertFalse(report.closed)
        self.assertIsNone(report.genus)
        self.assertEqual(area(surface), 1)
        with self.assertRaises(InvalidSurface):
            require_valid(surface)

    def test_vertex_classes(self):
        self.assertEqual(vertex_classes(corpus('torus')), [[(0, 0), (0, 1), (0, 2), (0, 3)]])
        classes = vertex_classes(corpus('genus2:a=1/4'))
        self.assertEqual(sorted(len(c) for c in classes), [4, 8])


class GluingTest(unittest.TestCase):
    def test_canonical_order(self):
        gluing = Gluing((0, 2), (0, 0))
        self.assertEqual((gluing.source, gluing.target), ((0, 0), (0, 2)))
        self.assertEqual(gluing.other((0, 0)), (0, 2))

    def test_gluing_of(self):
        surface = corpus('torus')
        self.assertEqual(surface.gluing_of((0, 0)), (0, 1))
        self.assertEqual(surface.gluing_of((0, 3)), (1, -1))
        self.assertEqual(surface.partner((0, 1)), (0, 3))

    def test_gluing_map(self):
        surface = corpus('torus')
        self.assertEqual(surface.gluing_map((0, 0))((Fraction(1, 2), 0)), (Fraction(1, 2), 1))
        turn = pillowcase().gluing_map((0, 0))
        self.assertEqual(turn((0, 0)), (2, 0))
        self.assertEqual(turn((1, 0)), (1, 0))


class DeformationTest(unittest.TestCase):
    def test_diagonal(self):
        matrix = LinearDeformation.diagonal(2)
        self.assertEqual(matrix.determinant(), 1)
        sigma_max, sigma_min = matrix.singular_values()
        self.assertAlmostEqual(sigma_max, 2)
        self.assertAlmostEqual(sigma_min, 0.5)
        self.assertEqual(matrix.inverse(), LinearDeformation.diagonal(Fraction(1, 2)))

    def test_determinant_must_be_one(self):
        with self.assertRaises(ConstraintFailure):
            LinearDeformation(2, 0, 0, 1)

    def test_rotation(self):
        matrix = LinearDeformation.rotation(Fraction(3, 5), Fraction(4, 5))
        self.assertTrue(matrix.exact)
        self.assertAlmostEqual(matrix.singular_values()[0], 1)
        self.assertEqual(matrix.apply((1, 0)), (Fraction(3, 5), Fraction(4, 5)))

    def test_apply_linear(self):
        torus = corpus('torus')
        stretched = apply_linear(torus, LinearDeformation.diagonal(2))
        self.assertEqual(stretched.polygons[0][2], (2, Fraction(1, 2)))
        self.assertEqual(area(stretched), 1)
        self.assertTrue(validate(stretched).ok)
        self.assertTrue(same_combinatorics(torus, stretched))
        self.assertFalse(same_combinatorics(torus, corpus('lshape')))

    def test_normalize_area(self):
        surface = normalize_area(corpus('lshape'))
        self.assertEqual(surface.scale2, Fraction(1, 3))
        self.assertEqual(area(surface), 1)
        self.assertEqual(surface.polygons, corpus('lshape').polygons)

    def test_saddle_length_after(self):
        self.assertAlmostEqual(saddle_length_after(1, 0, 2), 2)
        self.assertAlmostEqual(saddle_length_after(1, math.pi / 2, 2), 0.5)
        self.assertAlmostEqual(saddle_length_after(math.sqrt(2), math.pi / 4, 2),
                               math.sqrt(4.25))


if __name__ == '__main__':
    unittest.main()
