#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# gwtree documentation build configuration file.
#
# Only the settings that differ from the sphinx-quickstart defaults are
# listed here.

import os
import sys

# the package is imported from the source tree, one level up
sys.path.insert(0, os.path.dirname(os.path.abspath(os.path.dirname(__file__))))

import gwtree  # noqa: E402
import sphinx_py3doc_enhanced_theme  # noqa: E402

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.viewcode',
              'sphinx.ext.napoleon']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'gwtree'
copyright = '2026, The gwtree developers'
version = gwtree.__version__
release = gwtree.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# Google style docstrings throughout the package
napoleon_google_docstring = True
napoleon_numpy_docstring = False
autodoc_member_order = 'bysource'

html_theme = 'sphinx_py3doc_enhanced_theme'
html_theme_path = [sphinx_py3doc_enhanced_theme.get_html_theme_path()]
html_static_path = ['_static']
htmlhelp_basename = 'gwtreedoc'

man_pages = [
    ('usage', 'gwtree', 'Conditioned Galton-Watson trees and search cost',
     ['The gwtree developers'], 1),
]
