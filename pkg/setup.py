from setuptools import setup


long_description = """quadflat is a Python 3 library for the flat geometry of
half-translation surfaces: polygons in the plane glued along parallel edges
of equal length by translations or rotations by π.

It validates surface descriptions, enumerates saddle connections, cuts
surfaces into cylinders, pulls closed curves tight to their flat geodesic
representatives, computes intersection numbers and Dehn twists, pairs curves
with directional foliations and the Liouville current, and bounds the
asymmetric length ratio distance between two marked surfaces.

All combinatorial decisions are made with exact rational arithmetic, only
lengths and angles are floating point values.
"""
long_description_content_type = 'text/markdown'


def get_version():
    version_dict = {}
    with open('quadflat/version.py') as fp:
        exec(fp.read(), version_dict)
    return version_dict['__version__']


version = get_version()

setup(
    name='quadflat',
    packages=['quadflat'],
    version=version,
    description='Flat geometry of half-translation surfaces and length ratio distances',
    long_description=long_description,
    long_description_content_type=long_description_content_type,
    author='quadflat contributors',
    keywords=['translation surface', 'quadratic differential', 'flat geometry',
              'teichmuller'],
    python_requires='>=3.5',
    install_requires=[
        'networkx',
        'numpy',
    ],
    scripts=[
        'bin/quadflat',
    ],
    test_suite='tests',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: Implementation :: CPython',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
