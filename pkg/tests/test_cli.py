import csv
import io
import json
import math
import os
import tempfile
import unittest
from unittest import mock

from quadflat.cli import (
    EXIT_DOMAIN, EXIT_NOT_FOUND, EXIT_OK, EXIT_USAGE, Table, emit, parse_vector, run,
)

MISMATCHED = {
    "name": "mismatched",
    "polygons": [[[0, 0], [2, 0], [2, 1], [0, 1]]],
    "gluings": [{"from": [0, 0], "to": [0, 1]}, {"from": [0, 2], "to": [0, 3]}],
}


def quadflat(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    return list(csv.reader(io.StringIO(text)))


class EmitTest(unittest.TestCase):
    def test_table(self):
        out = io.StringIO()
        emit(Table(('a', 'long_name'), [(1, 0.5), ('xyz', None)]), 'table', out)
        self.assertEqual(out.getvalue(), "a    long_name\n1    0.5\nxyz\n")

    def test_json(self):
        out = io.StringIO()
        emit(Table(('x', 'ok'), [(2 ** 0.5, True)]), 'json', out)
        self.assertEqual(json.loads(out.getvalue()), [{'x': 1.41421356237, 'ok': True}])

    def test_parse_vector(self):
        self.assertEqual(parse_vector('2, -1/2'), (2, -0.5))
        with self.assertRaises(ValueError):
            parse_vector('1,2,3')


class SurfaceCommandTest(unittest.TestCase):
    def test_area(self):
        self.assertEqual(quadflat('area', '--surface', 'lshape'), (EXIT_OK, "area\n3\n"))

    def test_validate_table(self):
        code, text = quadflat('validate', '--surface', 'torus')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(text.splitlines()[0], '<quadflat.surface_model.ValidationReport>')

    def test_validate_json(self):
        code, text = quadflat('validate', '--surface', 'genus2:a=1/4', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        document = json.loads(text)
        self.assertEqual(document[0]['genus'], 2)
        self.assertEqual(document[0]['area'], '1')
        self.assertEqual(document[0]['cone_angles'], '4pi 4pi')

    def test_validate_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'mismatched.json')
            with open(path, 'w') as fp:
                json.dump(MISMATCHED, fp)
            code, text = quadflat('validate', '--surface', path, '--format', 'csv')
            self.assertEqual(code, EXIT_DOMAIN)
            self.assertEqual(rows(text)[1][0], 'false')
            self.assertEqual(quadflat('sc', '--surface', path, '--length-bound', '1')[0],
                             EXIT_DOMAIN)

    def test_unknown_surface(self):
        self.assertEqual(quadflat('area', '--surface', 'sphere')[0], EXIT_DOMAIN)

    def test_usage(self):
        self.assertEqual(quadflat('sc', '--surface', 'torus')[0], EXIT_USAGE)
        self.assertEqual(quadflat('sc', '--surface', 'torus', '--length-bound', '-1')[0],
                         EXIT_USAGE)
        self.assertEqual(quadflat('frobnicate')[0], EXIT_USAGE)

    def test_saddle_connections(self):
        code, text = quadflat('sc', '--surface', 'torus', '--length-bound', '1.5',
                              '--format', 'csv')
        self.assertEqual(code, EXIT_OK)
        table = rows(text)
        self.assertEqual(table[0], ['len2_num', 'len2_den', 'dx', 'dy', 'src', 'dst'])
        self.assertEqual(table[1:], [['1', '1', '0', '1', '0', '0'],
                                     ['1', '1', '1', '0', '0', '0'],
                                     ['2', '1', '-1', '1', '0', '0'],
                                     ['2', '1', '1', '1', '0', '0']])

    def test_cylinders(self):
        code, text = quadflat('cyl', '--surface', 'lshape', '--direction', '1,0',
                              '--format', 'csv')
        self.assertEqual(code, EXIT_OK)
        table = rows(text)
        self.assertEqual([row[2] for row in table[1:]], ['1', '2'])

    def test_cylinder_curves(self):
        code, text = quadflat('cyl', '--surface', 'torus', '--length-bound', '1.5',
                              '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        lengths = [row['length'] for row in json.loads(text)]
        self.assertEqual(lengths, [1, 1, 1.41421356237, 1.41421356237])


class CurveCommandTest(unittest.TestCase):
    def test_len(self):
        code, text = quadflat('len', '--surface', 'torus', '--word', '+1,-0', '--word', '+1',
                              '--format', 'csv')
        self.assertEqual(code, EXIT_OK)
        table = rows(text)
        self.assertEqual(table[0], ['word', 'length', 'singular', 'geodesic'])
        self.assertEqual(table[1][:3], ['+1,-0', '1.41421356237', 'false'])
        self.assertEqual(table[2][:3], ['+1', '1', 'false'])

    def test_len_contractible(self):
        self.assertEqual(quadflat('len', '--surface', 'torus', '--word', '+1,-1')[0],
                         EXIT_DOMAIN)

    def test_len_bad_word(self):
        self.assertEqual(quadflat('len', '--surface', 'torus', '--word', 'x')[0], EXIT_USAGE)

    def test_twist(self):
        code, text = quadflat('twist', '--surface', 'torus', '--alpha', '-0', '--beta', '+1',
                              '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        row = json.loads(text)[0]
        self.assertEqual(row['intersection'], 1)
        self.assertAlmostEqual(row['gap'], 2 - math.sqrt(2), places=9)

    def test_pair_self(self):
        code, text = quadflat('pair', '--surface', 'torus', '--self', '--theta-samples', '2000',
                              '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        row = json.loads(text)[0]
        self.assertLess(abs(row['self_intersection'] - math.pi / 2), 2e-3)

    def test_liouville_alias(self):
        code, text = quadflat('liouville', '--surface', 'torus', '--word', '+1',
                              '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        row = json.loads(text)[0]
        self.assertLess(abs(row['pairing'] - 1), 1e-3)

    def test_pair_theta(self):
        code, text = quadflat('pair', '--surface', 'torus', '--word', '+1', '--theta', '0',
                              '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        self.assertAlmostEqual(json.loads(text)[0]['pairing'], 0.0)

    def test_pair_needs_word(self):
        self.assertEqual(quadflat('pair', '--surface', 'torus')[0], EXIT_USAGE)


class DistanceCommandTest(unittest.TestCase):
    def test_linear(self):
        code, text = quadflat('kdist', '--surface', 'torus', '--deformation', '2', '0', '0',
                              '1/2', '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        row = json.loads(text)[0]
        self.assertEqual(row['status'], 'exact')
        self.assertAlmostEqual(row['ratio'], 2.0, places=9)
        self.assertTrue(row['certified'])

    def test_bad_determinant(self):
        self.assertEqual(quadflat('kdist', '--surface', 'torus', '--deformation', '2', '0', '0',
                                  '1')[0], EXIT_DOMAIN)

    def test_family(self):
        code, text = quadflat('kdist', '--pair', 'genus2:a=1/4,b=1/3', '--length-bound', '1',
                              '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        forward, backward = json.loads(text)
        self.assertEqual(forward['report'], 'forward')
        self.assertAlmostEqual(forward['ratio'], 4 / 3, places=9)
        self.assertTrue(forward['certified'])
        self.assertEqual(forward['status'], 'lower-bound')
        self.assertAlmostEqual(backward['ratio'],
                               (1 / math.sqrt(2) - 1 / 4) / (1 / math.sqrt(2) - 1 / 3), places=9)

    def test_curves_table(self):
        code, text = quadflat('kdist', '--pair', 'torus', 'torus', '--length-bound', '1.5',
                              '--curves', '--format', 'csv')
        self.assertEqual(code, EXIT_OK)
        table = rows(text)
        self.assertEqual(table[0], ['report', 'word', 'length_first', 'length_second', 'ratio'])
        self.assertEqual(len(table), 1 + 2 * 4)

    def test_not_found(self):
        self.assertEqual(quadflat('kdist', '--pair', 'torus', 'torus', '--find-longer')[0],
                         EXIT_NOT_FOUND)

    def test_usage(self):
        self.assertEqual(quadflat('kdist')[0], EXIT_USAGE)
        self.assertEqual(quadflat('kdist', '--pair', 'torus', 'torus', 'torus')[0], EXIT_USAGE)
        self.assertEqual(quadflat('kdist', '--deformation', '1', '0', '0', '1')[0], EXIT_USAGE)

    def test_mismatch(self):
        self.assertEqual(quadflat('kdist', '--pair', 'torus', 'lshape')[0], EXIT_DOMAIN)


class DemoTest(unittest.TestCase):
    def test_demo(self):
        code, text = quadflat('demo', '--format', 'csv')
        self.assertEqual(code, EXIT_OK)
        table = rows(text)
        self.assertEqual(table[0], ['check', 'result', 'detail'])
        self.assertEqual({row[1] for row in table[1:]}, {'PASS'})

    def test_demo_internal_error(self):
        def broken():
            raise ZeroDivisionError("division by zero")

        checks = [("passing", lambda: (True, "ok")), ("broken", broken)]
        with mock.patch('quadflat.cli._demo_checks', return_value=checks):
            code, text = quadflat('demo', '--format', 'csv')
        self.assertEqual(code, EXIT_DOMAIN)
        self.assertEqual(rows(text)[1:], [['passing', 'PASS', 'ok'],
                                          ['broken', 'FAIL', 'internal error: division by zero']])


class InternalErrorTest(unittest.TestCase):
    def test_command(self):
        with mock.patch('quadflat.cli.area', side_effect=RuntimeError("broken")):
            self.assertEqual(quadflat('area', '--surface', 'torus'), (EXIT_DOMAIN, ""))


if __name__ == '__main__':
    unittest.main()
