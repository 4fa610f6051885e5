#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# quadflat documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.mathjax',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'quadflat'
copyright = '2025, quadflat contributors'
author = 'quadflat contributors'


def get_version():
    version_dict = {}
    with open('../../quadflat/version.py') as fp:
        exec(fp.read(), version_dict)
    return version_dict['__version__']


# The short X.Y version.
version = get_version()
# The full version, including alpha/beta/rc tags.
release = version

exclude_patterns = []
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'quadflatdoc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'quadflat', 'quadflat Documentation', [author], 1)
]

# Document members in the order they appear in the source, so that the
# module docstrings and the types they introduce come first.
autodoc_member_order = 'bysource'
