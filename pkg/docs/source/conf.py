#!/usr/bin/env python3
#
# closure_mc documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

sys.path.insert(0, os.path.abspath("../.."))


# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "myst_parser",
]

templates_path = ["_templates"]

source_suffix = [".rst", ".md"]

master_doc = "index"

project = "closure_mc"
copyright = "2024, closure_mc developers"
author = "closure_mc developers"

from closure_mc import __version__ as VERSION  # noqa

version = VERSION
release = VERSION

language = "en"

exclude_patterns = []

pygments_style = "sphinx"

todo_include_todos = False

autodoc_member_order = "bysource"


# -- Options for HTML output ----------------------------------------------

html_theme = "alabaster"

html_theme_options = {
    "logo_name": "closure_mc",
    "fixed_sidebar": True,
}

html_static_path = ["_static"]

html_sidebars = {
    "**": [
        "about.html",
        "navigation.html",
        "relations.html",
        "searchbox.html",
    ],
}

htmlhelp_basename = "closure_mcdoc"


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, "closure-mc", "closure_mc Documentation", [author], 1),
]
