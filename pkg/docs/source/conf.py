# -*- coding: utf-8 -*-
#
# ctreepy documentation build configuration file
import sys
import os
import sphinx_rtd_theme

sys.path.insert(0, os.path.abspath('../../'))

extensions = [
    'sphinx.ext.autodoc', 'sphinxcontrib.napoleon'
]
autoclass_content = 'class'
autodoc_member_order = 'bysource'
autodoc_default_flags = ['members', 'show-inheritance']
napoleon_include_special_with_doc = True
napoleon_include_init_with_doc = True

source_suffix = '.rst'
master_doc = 'index'

project = u'ctreepy'
copyright = u'2026, ctreepy developers'
author = u'ctreepy developers'
version = u'0.1.0'
release = u'0.1.0'

exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
htmlhelp_basename = 'ctreepydoc'
