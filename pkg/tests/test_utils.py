import unittest
from fractions import Fraction

from quadflat.corpus import corpus
from quadflat.surface_model import validate
from quadflat.utils import THREADS_ENV, default_threads, format_real, pretty_lines


class FormatTest(unittest.TestCase):
    def test_format_real(self):
        self.assertEqual(format_real(2 ** 0.5), '1.41421356237')
        self.assertEqual(format_real(Fraction(3, 4)), '3/4')
        self.assertEqual(format_real(Fraction(6, 3)), '2')
        self.assertEqual(format_real(5), '5')
        self.assertEqual(format_real(0.25), '0.25')


class ThreadsTest(unittest.TestCase):
    def test_default(self):
        self.assertEqual(default_threads({}), 1)
        self.assertEqual(default_threads({THREADS_ENV: ''}), 1)
        self.assertEqual(default_threads({THREADS_ENV: '4'}), 4)

    def test_invalid(self):
        for value in ('0', '-2', 'many'):
            with self.assertRaises(ValueError):
                default_threads({THREADS_ENV: value})


class PrettyTest(unittest.TestCase):
    def test_report(self):
        lines = list(pretty_lines(validate(corpus('lshape'))))
        self.assertEqual(lines[0], '<quadflat.surface_model.ValidationReport>')
        self.assertIn('ok: True', lines)
        self.assertIn('genus: 2', lines)
        self.assertIn('area: 3', lines)
        self.assertIn('  <quadflat.surface_model.ConePointInfo>', lines)
        self.assertIn('  multiple: 6', lines)

    def test_plain_values(self):
        self.assertEqual(list(pretty_lines([1.5, Fraction(1, 2)])),
                         ['-', '  1.5', '-', '  1/2'])
        self.assertEqual(list(pretty_lines({'a': 1})), ['a:', '  1'])

    def test_recursion(self):
        loop = []
        loop.append(loop)
        self.assertEqual(list(pretty_lines(loop)),
                         ['-', '  [... object already seen, aborting recursion]'])


if __name__ == '__main__':
    unittest.main()
