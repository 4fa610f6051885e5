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
Built-in example surfaces.

Three families are available by name:

- ``torus``: the unit square with opposite sides glued.
- ``lshape``: three unit squares in an L, genus 2 with one 6π cone point.
- ``genus2:a=<s>``: two squares of area 1/2, glued along four horizontal
  slits so that the bottom edges split into saddle connections I, II (of
  square A) and III, IV (of square B), with l(II) = l(IV) = s and
  l(I) = l(III) = 1/sqrt(2) - s. Moving s deforms the surface by an
  affine map per piece whose Lipschitz constant is known exactly.

Coordinates of the ``genus2`` squares are unit squares with a squared
scale factor of 1/2. The split point s*sqrt(2) is rounded to a fraction, so
the member for s is exact for a parameter within about 1e-12 of s.
"""

import logging
import math
import re
from fractions import Fraction

from quadflat import geometry
from quadflat.curves import saddle_chain_word, tighten
from quadflat.errors import ConstraintFailure, UnknownCorpusEntry
from quadflat.surface_model import Gluing, HalfTranslationSurface, require_valid

log = logging.getLogger(__name__)

#: Largest denominator of the rounded split point of a ``genus2`` member.
GENUS2_DENOMINATOR_LIMIT = 10**12
#: Tolerance for the certified geodesic lengths.
CERTIFY_TOLERANCE = 1e-9

_FAMILY = re.compile(r'^(\w+)(?::(.*))?$')


class CorpusEntry(object):
    """A named surface together with what it must look like.

    :ivar str name: Full name, for example ``genus2:a=1/4``.
    :ivar dict parameters: Generator parameters.
    :ivar int genus: Expected genus.
    :ivar Fraction area: Expected area.
    :ivar multiples: Expected sorted cone angles divided by π, marked
        points included.
    :vartype multiples: list(int)
    """
    def __init__(self, name, parameters, genus, area, multiples, builder):
        self.name = name
        self.parameters = parameters
        self.genus = genus
        self.area = Fraction(area)
        self.multiples = sorted(multiples)
        self._builder = builder

    def build(self):
        """Generate and validate the surface.

        :rtype: HalfTranslationSurface
        :raises ConstraintFailure: If the generated surface does not have
            the expected genus, area or cone angles.
        """
        surface = self._builder(**self.parameters)
        surface.name = self.name
        report = require_valid(surface)
        found = (report.genus, report.area, report.angle_multiples())
        expected = (self.genus, self.area, self.multiples)
        if found != expected:
            raise ConstraintFailure("{} built as genus {} area {} cones {}, expected {}".format(
                self.name, report.genus, geometry.rational_str(report.area),
                report.angle_multiples(), expected))
        return surface

    def __str__(self):
        return "{} genus {} area {} cone angles {}".format(
            self.name, self.genus, geometry.rational_str(self.area),
            ', '.join("{}pi".format(m) for m in self.multiples))


def torus():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    return HalfTranslationSurface([square], [Gluing((0, 0), (0, 2)), Gluing((0, 1), (0, 3))],
                                  name='torus')


def lshape():
    octagon = [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2), (0, 1)]
    gluings = [Gluing((0, 0), (0, 5)), Gluing((0, 1), (0, 3)),
               Gluing((0, 2), (0, 7)), Gluing((0, 4), (0, 6))]
    return HalfTranslationSurface([octagon], gluings, name='lshape')


def split_point(s):
    """Rounded split point s*sqrt(2) of the ``genus2`` member for s.

    :raises ConstraintFailure: If s is not in (0, 1/sqrt(2)).
    """
    s = Fraction(s)
    if s <= 0 or 2 * s * s >= 1:
        raise ConstraintFailure("genus2 parameter {} is not in (0, 1/sqrt(2))".format(
            geometry.rational_str(s)))
    t = Fraction(float(s) * math.sqrt(2)).limit_denominator(GENUS2_DENOMINATOR_LIMIT)
    if not 0 < t < 1:
        raise ConstraintFailure("genus2 parameter {} is too close to the ends".format(
            geometry.rational_str(s)))
    return t


def genus2(a):
    """Two slit squares of area 1/2.

    Polygon 0 is square A and polygon 1 is square B. Both have vertices
    (0, 0), (1 - t, 0), (1, 0), (1, 1), (1 - t, 1), (0, 1), where t is
    :func:`split_point`. Edges 0 and 1 of A are I and II, of B they are
    III and IV.
    """
    t = split_point(a)
    square = [(0, 0), (1 - t, 0), (1, 0), (1, 1), (1 - t, 1), (0, 1)]
    A, B = 0, 1
    gluings = [
        Gluing((A, 0), (B, 4)), Gluing((A, 4), (B, 0)),
        Gluing((A, 1), (A, 3)), Gluing((B, 1), (B, 3)),
        Gluing((A, 2), (A, 5)), Gluing((B, 2), (B, 5)),
    ]
    return HalfTranslationSurface([square, square], gluings, scale2=Fraction(1, 2))


def genus2_classes(surface):
    """Words of the closed geodesics II*IV^-1 and I*III^-1 of a ``genus2``
    member.

    :returns: (word of II*IV^-1, word of I*III^-1)
    :rtype: tuple(quadflat.curves.CurveWord)
    """
    A, B = 0, 1
    one_minus_t, _ = surface.edge_vector(A, 0)
    t, _ = surface.edge_vector(A, 1)
    zero = Fraction(0)
    second_fourth = saddle_chain_word(surface, [(A, 1, (t, zero)), (B, 2, (-t, zero))])
    first_third = saddle_chain_word(surface, [(A, 0, (one_minus_t, zero)),
                                              (B, 1, (-one_minus_t, zero))])
    return second_fourth, first_third


def _certify_genus2(surface, s):
    expected = (2 * s, 2 * (1 / math.sqrt(2) - s))
    for word, length in zip(genus2_classes(surface), expected):
        geodesic = tighten(surface, word)
        if abs(geodesic.length - length) > CERTIFY_TOLERANCE:
            raise ConstraintFailure("class {} of {} has length {:.12g}, expected {:.12g}".format(
                word, surface.name, geodesic.length, length))
        log.debug("certified %s on %s: length %.12g", word, surface.name, geodesic.length)


def _parameters(name, text):
    parameters = {}
    if not text:
        return parameters
    for item in text.split(','):
        key, sep, value = item.partition('=')
        if not sep:
            raise UnknownCorpusEntry("malformed parameter {!r} in {!r}".format(item, name))
        try:
            parameters[key.strip()] = geometry.parse_rational(value.strip())
        except ValueError as e:
            raise UnknownCorpusEntry("malformed parameter {!r} in {!r}: {}".format(
                item, name, e)) from e
    return parameters


def corpus_entry(name):
    """Look up a built-in surface by name.

    :rtype: CorpusEntry
    :raises UnknownCorpusEntry: If the name is not known.
    """
    match = _FAMILY.match(name.strip())
    if match is None:
        raise UnknownCorpusEntry("unknown corpus entry {!r}".format(name))
    family, parameters = match.group(1), _parameters(name, match.group(2))
    if family == 'torus' and not parameters:
        return CorpusEntry('torus', {}, 1, 1, [2], torus)
    if family == 'lshape' and not parameters:
        return CorpusEntry('lshape', {}, 2, 3, [6], lshape)
    if family == 'genus2' and list(parameters) == ['a']:
        return CorpusEntry("genus2:a={}".format(geometry.rational_str(parameters['a'])),
                           parameters, 2, 1, [4, 4], genus2)
    raise UnknownCorpusEntry("unknown corpus entry {!r}".format(name))


def corpus(name):
    """Build a built-in surface.

    Example::

        >>> from quadflat.corpus import corpus
        >>> surface = corpus('genus2:a=1/4')
        >>> len(surface.polygons), surface.scale2
        (2, Fraction(1, 2))

    :rtype: HalfTranslationSurface
    :raises UnknownCorpusEntry: If the name is not known.
    :raises ConstraintFailure: If the parameters are out of range or the
        built surface fails its checks.
    """
    entry = corpus_entry(name)
    surface = entry.build()
    if name.strip().startswith('genus2'):
        _certify_genus2(surface, entry.parameters['a'])
    log.info("built %s", entry)
    return surface


def family_pair(text):
    """Parse ``genus2:a=<s>,b=<t>`` into the two parameters.

    :rtype: tuple(Fraction, Fraction)
    :raises UnknownCorpusEntry: If the text is not a family pair.
    """
    match = _FAMILY.match(text.strip())
    if match is None or match.group(1) != 'genus2':
        raise UnknownCorpusEntry("unknown corpus pair {!r}".format(text))
    parameters = _parameters(text, match.group(2))
    if sorted(parameters) != ['a', 'b']:
        raise UnknownCorpusEntry("corpus pair {!r} needs parameters a and b".format(text))
    return parameters['a'], parameters['b']
