# Copyright (C) 2025 quadflat contributors
#
# This file is part of the quadflat module.
#
# quadflat is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# quadflat is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with quadflat.  If not, see <http://www.gnu.org/licenses/>.

"""
Exact plane primitives.

Points and vectors are plain tuples of two :class:`fractions.Fraction`
values. All predicates in this module are exact; only the functions that
return angles or lengths give floating point results.

Surfaces only ever need two kinds of plane isometries: translations and
rotations by π around some point. Both are represented by :class:`Isometry`.
"""

import math
import re
from fractions import Fraction

_re_rational = re.compile(r'^\s*(?P<num>[+-]?\d+)(?:\s*/\s*(?P<den>\d+))?\s*$')


def parse_rational(text):
    """Parse a rational literal like ``'3/4'``, ``'-2'`` or ``'1/2'``.

    :param str text: String literal to be parsed.
    :returns: The exact value.
    :rtype: Fraction
    :raises ValueError: If the input is no rational literal or has a zero
        denominator.

    Example::

        >>> quadflat.geometry.parse_rational('6/8')
        Fraction(3, 4)
    """
    match = _re_rational.match(str(text))
    if match is None:
        raise ValueError("literal cannot be parsed as rational: {!r}".format(text))
    den = match.group('den')
    if den is not None and int(den) == 0:
        raise ValueError("zero denominator in rational literal: {!r}".format(text))
    return Fraction(int(match.group('num')), int(den) if den is not None else 1)


def rational_str(value):
    """
    :param Fraction value: Exact value.
    :returns: ``p/q`` representation, or just ``p`` for integers.
    :rtype: str
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


def vec(x, y):
    return (Fraction(x), Fraction(y))


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def neg(a):
    return (-a[0], -a[1])


def scale(a, factor):
    return (a[0] * factor, a[1] * factor)


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def norm2(a):
    return a[0] * a[0] + a[1] * a[1]


def midpoint(a, b):
    return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


def orientation(a, b, c):
    """Sign of the turn a -> b -> c: 1 for left, -1 for right, 0 collinear."""
    value = cross(sub(b, a), sub(c, a))
    return (value > 0) - (value < 0)


def signed_area2(points):
    """Twice the signed area of a polygon (shoelace formula)."""
    total = Fraction(0)
    n = len(points)
    for i in range(n):
        total += cross(points[i], points[(i + 1) % n])
    return total


def on_segment(p, a, b):
    """True if p lies on the closed segment from a to b."""
    if cross(sub(b, a), sub(p, a)) != 0:
        return False
    return dot(sub(p, a), sub(p, b)) <= 0


def segment_distance2(p, a, b):
    """Exact squared distance from point p to the closed segment ab."""
    ab = sub(b, a)
    ap = sub(p, a)
    den = norm2(ab)
    if den == 0:
        return norm2(ap)
    s = dot(ap, ab) / den
    if s <= 0:
        return norm2(ap)
    if s >= 1:
        return norm2(sub(p, b))
    return norm2(sub(ap, scale(ab, s)))


def segments_cross(a, b, c, d):
    """True if the closed segments ab and cd have a point in common."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    return (o1 == 0 and on_segment(c, a, b)) or (o2 == 0 and on_segment(d, a, b)) or \
        (o3 == 0 and on_segment(a, c, d)) or (o4 == 0 and on_segment(b, c, d))


def line_parameters(p, u, q, w):
    """Intersection parameters of the lines p + s*u and q + t*w.

    :returns: (s, t), or None for parallel lines.
    """
    den = cross(u, w)
    if den == 0:
        return None
    qp = sub(q, p)
    return cross(qp, w) / den, cross(qp, u) / den


def ccw_angle(a, b):
    """Angle in [0, 2π) to rotate vector a counterclockwise onto b."""
    angle = math.atan2(float(cross(a, b)), float(dot(a, b)))
    if angle < 0:
        angle += 2 * math.pi
    return angle


def angle_between(a, b):
    """Unsigned angle in [0, π] between vectors a and b."""
    return math.atan2(abs(float(cross(a, b))), float(dot(a, b)))


def pseudo_angle(start, v):
    """Exact key increasing with the counterclockwise angle from start to v.

    Only valid for angles in [0, π], which is all a triangle corner needs.
    """
    c = cross(start, v)
    d = dot(start, v)
    total = abs(c) + abs(d)
    return 1 - d / total


def in_sector(v, start, end):
    """True if v points into the half-open sector [start, end).

    The sector is swept counterclockwise from start to end and must be
    narrower than π.
    """
    c_start = cross(start, v)
    if c_start < 0:
        return False
    if c_start == 0 and dot(start, v) <= 0:
        return False
    return cross(v, end) > 0


def length(v):
    """Euclidean length of an exact vector as float."""
    return math.sqrt(norm2(v))


class Isometry(object):
    """Plane isometry x -> sign*x + shift with sign in {1, -1}.

    :ivar int sign: 1 for a translation, -1 for a rotation by π.
    :ivar shift: Translation part.
    :vartype shift: tuple(Fraction, Fraction)
    """
    __slots__ = ('sign', 'shift')

    def __init__(self, sign=1, shift=(Fraction(0), Fraction(0))):
        self.sign = sign
        self.shift = (Fraction(shift[0]), Fraction(shift[1]))

    @staticmethod
    def translation(v):
        return Isometry(1, v)

    @staticmethod
    def rotation_pi(center):
        return Isometry(-1, scale(center, 2))

    def __call__(self, p):
        return (self.sign * p[0] + self.shift[0], self.sign * p[1] + self.shift[1])

    def linear(self, v):
        return (self.sign * v[0], self.sign * v[1])

    def compose(self, other):
        """The isometry self ∘ other."""
        return Isometry(self.sign * other.sign, self(other.shift))

    def inverse(self):
        return Isometry(self.sign, scale(self.shift, -self.sign))

    def power(self, n):
        result = Isometry()
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result.compose(base)
        return result

    def is_identity(self):
        return self.sign == 1 and self.shift == (0, 0)

    def __eq__(self, other):
        return isinstance(other, Isometry) and self.sign == other.sign and \
            self.shift == other.shift

    def __hash__(self):
        return hash((self.sign, self.shift))

    def __repr__(self):
        return "Isometry({}, ({}, {}))".format(
            self.sign, rational_str(self.shift[0]), rational_str(self.shift[1]))

    def __str__(self):
        if self.sign == 1:
            return "translation by ({}, {})".format(
                rational_str(self.shift[0]), rational_str(self.shift[1]))
        center = scale(self.shift, Fraction(1, 2))
        return "rotation by pi around ({}, {})".format(
            rational_str(center[0]), rational_str(center[1]))
