# -*- coding: utf-8 -*-
#
# sensornet documentation build configuration file.

import os
import sys

sys.path.insert(0, os.path.abspath('..'))

from sensornet import __version__

extensions = []
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'sensornet'
copyright = u'2026, sensornet contributors'
version = __version__
release = version

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
html_show_sourcelink = False
html_show_sphinx = False
htmlhelp_basename = 'sensornetdoc'

man_pages = [
    ('index', 'sensornet', u'sensornet Documentation', [u'sensornet contributors'], 1)
]
