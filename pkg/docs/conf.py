# -*- coding: utf-8 -*-
import os
import sys

# The import root of the package is ``src``
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration -----------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',     # Google style Args/Returns/Raises
    'sphinxcontrib.mermaid',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'Positroids'
copyright = u'2025, kabix09'
author = u'kabix09'

version = u'0.1'
release = u'0.1.0'

language = 'en'

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'

autodoc_member_order = 'bysource'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_theme_options = {
    'collapse_navigation': False,
    'sticky_navigation': True,
    'navigation_depth': 4,
}

html_static_path = ['_static']

# -- Options for LaTeX output --------------------------------------------------

latex_elements = {
    'papersize': 'a4paper',
    'pointsize': '11pt',
}

latex_documents = [
    ('index', 'positroids.tex', u'Positroids Documentation',
     u'kabix09', 'manual'),
]
