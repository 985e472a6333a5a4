# -*- coding: utf-8 -*-
#
# qleak documentation build configuration file for sphinx-build.

import os
import sys

# Document the package of this source tree
sys.path.insert(0, os.path.abspath('../..'))

from qleak import __version__  # noqa: E402

extensions = [
    'sphinx.ext.autodoc', 'sphinx.ext.doctest', 'sphinx.ext.todo',
    'sphinx.ext.coverage', 'sphinx.ext.viewcode', 'sphinx.ext.mathjax',
    'sphinx_rtd_theme']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'qleak'
copyright = u'2026, qleak developers'
version = 'v%s' % __version__
release = version

exclude_patterns = []
pygments_style = 'sphinx'
autodoc_member_order = 'bysource'

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'qleakdoc'

latex_documents = [
    ('index', 'qleak.tex', u'qleak Documentation',
     u'qleak developers', 'manual'),
]

man_pages = [
    ('index', 'qleak', u'qleak Documentation',
     [u'qleak developers'], 1)
]
