#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# GeomInt documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

sys.path.insert(0, os.path.abspath('..'))

import GeomInt  # noqa: E402

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinx.ext.viewcode',
              'sphinx.ext.napoleon',
              'sphinx.ext.autosummary']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = 'GeomInt'
copyright = '2026 GeomInt developers'
authors = ['GeomInt developers']

# The short X.Y version.
version = GeomInt.__version__
# The full version, including alpha/beta/rc tags.
release = GeomInt.__version__

language = None

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'

todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_static_path = ['_static']

htmlhelp_basename = 'GeomIntdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'GeomInt.tex', 'GeomInt Documentation',
     'GeomInt developers', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'geomint', 'GeomInt Documentation',
     authors, 1)
]

# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
    (master_doc, 'GeomInt', 'GeomInt Documentation',
     authors, 'GeomInt', 'Geometric integrators for nonholonomic and vakonomic mechanics.',
     'Miscellaneous'),
]
