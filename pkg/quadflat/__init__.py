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

import inspect
import sys
if sys.version_info.major < 3:
    raise ImportError("This library needs Python 3.")


from quadflat.surface_model import (  # noqa
    HalfTranslationSurface, Gluing, LinearDeformation, load_surface, serialize, validate,
)
from quadflat.curves import CurveWord  # noqa
from quadflat.flat_geometry import Direction  # noqa
import quadflat.geometry  # noqa
import quadflat.surface_model  # noqa
import quadflat.flat_geometry  # noqa
import quadflat.saddle_enum  # noqa
import quadflat.cylinders  # noqa
import quadflat.curves  # noqa
import quadflat.foliation_pairing  # noqa
import quadflat.corpus  # noqa
import quadflat.k_distance  # noqa
import quadflat.utils  # noqa
from quadflat.version import __version__  # noqa


# Classes in our modules can define a _pretty_properties static method that
# returns hints for properties for the pretty printer that they want to have
# added dynamically.
#
# Each value in the list is a tuple containing two values:
# * The function that needs to be run to get the pretty string representation.
# * The name of the attribute whose value needs to be fed to that function.
#
# The pretty printer itself can be found in quadflat.utils.
def _generate_pretty_properties():
    def pretty_property_factory(fn, attribute_name):
        def property_fn(self):
            return fn(getattr(self, attribute_name))
        return property_fn

    for module in [
        quadflat.surface_model,
        quadflat.saddle_enum,
        quadflat.cylinders,
        quadflat.curves,
        quadflat.k_distance,
    ]:
        for name, cls in inspect.getmembers(
            module,
            lambda member: inspect.isclass(member) and member.__module__ == module.__name__
        ):
            try:
                hints = cls._pretty_properties()
            except AttributeError:
                continue
            for fn, attribute_name in hints:
                setattr(cls, '{}_str'.format(attribute_name),
                        property(pretty_property_factory(fn, attribute_name), None,
                                 doc="Pretty string representation for the {} attribute.".format(
                                     attribute_name)))


_generate_pretty_properties()
