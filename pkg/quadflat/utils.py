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
This module contains a small collection of helpers: the :func:`pretty_print`
function which provides a quick readable textual dump of most of the object
types in this library, and the number formatting used by the command line
tools.
"""

import os
import types
from fractions import Fraction

from quadflat import geometry

#: Environment variable holding the default worker thread count.
THREADS_ENV = 'QUADFLAT_THREADS'
#: Significant digits for printed floating point values.
SIGNIFICANT_DIGITS = 12


def format_real(value):
    """
    :param value: A number.
    :returns: ``p/q`` for a Fraction, otherwise the value with
        :data:`SIGNIFICANT_DIGITS` significant digits.

    Example::

        >>> quadflat.utils.format_real(2 ** 0.5)
        '1.41421356237'
        >>> quadflat.utils.format_real(Fraction(3, 4))
        '3/4'
    """
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return geometry.rational_str(Fraction(value))
    return "{:.{}g}".format(value, SIGNIFICANT_DIGITS)


def default_threads(environ=None):
    """Thread count from :data:`THREADS_ENV`, or 1.

    :raises ValueError: If the variable is set but is no positive integer.
    """
    environ = os.environ if environ is None else environ
    value = environ.get(THREADS_ENV)
    if value is None or value == '':
        return 1
    threads = int(value)
    if threads < 1:
        raise ValueError("{} must be a positive integer, not {!r}".format(THREADS_ENV, value))
    return threads


def _pretty_attr_value(obj, attr_name):
    attr_name_str = '{}_str'.format(attr_name)
    stringify_property = getattr(obj.__class__, attr_name_str, None)
    if stringify_property is not None and isinstance(stringify_property, property):
        return "{}: {}".format(attr_name, getattr(obj, attr_name_str))
    value = getattr(obj, attr_name)
    if isinstance(value, float):
        return "{}: {}".format(attr_name, format_real(value))
    return "{}: {}".format(attr_name, value)


pretty_print_modules = (
    'quadflat.surface_model', 'quadflat.saddle_enum', 'quadflat.cylinders',
    'quadflat.k_distance', 'quadflat.corpus',
)


def _pretty_obj_tuples(obj, level=0, seen=None):
    if seen is None:
        seen = []
    cls = obj.__class__
    if cls.__module__ in pretty_print_modules:
        yield level, "<{}.{}>".format(cls.__module__, cls.__name__)
    if any(obj is other for other in seen):
        yield level, "[... object already seen, aborting recursion]"
        return
    seen.append(obj)
    known = False
    if cls.__module__ in pretty_print_modules:
        known = True
        for attr_name, attr_value in obj.__dict__.items():
            if attr_name.startswith('_'):
                continue
            if isinstance(attr_value, list):
                if len(attr_value) == 0:
                    continue
                yield level, "{}:".format(attr_name)
                for item in attr_value:
                    yield level, '-'
                    yield from _pretty_obj_tuples(item, level+1, seen)
            elif isinstance(attr_value, dict):
                if len(attr_value) == 0:
                    continue
                yield level, "{}:".format(attr_name)
                for k, v in attr_value.items():
                    yield level+1, "{}:".format(k)
                    yield from _pretty_obj_tuples(v, level+2, seen)
            elif attr_value.__class__.__module__ in pretty_print_modules:
                yield level, "{}:".format(attr_name)
                yield from _pretty_obj_tuples(attr_value, level+1, seen)
            else:
                yield level, _pretty_attr_value(obj, attr_name)
    if isinstance(obj, (list, tuple, types.GeneratorType)):
        known = True
        for item in obj:
            yield level, '-'
            yield from _pretty_obj_tuples(item, level+1, seen)
    elif isinstance(obj, dict) and len(obj) != 0:
        known = True
        for k, v in obj.items():
            yield level, "{}:".format(k)
            yield from _pretty_obj_tuples(v, level+1, seen)
    if not known:
        yield level, format_real(obj) if isinstance(obj, float) else str(obj)
    seen.pop()


def pretty_lines(obj, level=0):
    """Lines of :func:`pretty_print` output, without printing them."""
    for level, line in _pretty_obj_tuples(obj, level):
        yield "{}{}".format('  ' * level, line)


def pretty_print(obj):
    """
    The pretty printer dumps content of objects on the screen. It is mainly
    designed to work with objects from the quadflat library. It is also
    possible to provide a list of objects, or a generator, or even nested
    structures.

    :param obj: An object to pretty print, or a collection of them.
    :type obj: anything goes

    Example::

        >>> from quadflat.corpus import corpus
        >>> from quadflat.surface_model import validate
        >>> quadflat.utils.pretty_print(validate(corpus('lshape')))
        <quadflat.surface_model.ValidationReport>
        ok: True
        genus: 2
        cone_points:
        -
          <quadflat.surface_model.ConePointInfo>
          index: 0
          multiple: 6
        ...
    """
    for line in pretty_lines(obj):
        print(line)
