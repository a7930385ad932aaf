import os
import sys
from datetime import date

sys.path.insert(0, os.path.abspath("../src"))

from orientedmonoids import __version__  # noqa: E402

# -- General configuration ------------------------------------------------

project = "orientedmonoids"
author = "Wyatt Baldwin"
copyright = f"{date.today().year} Wyatt Baldwin"

version = __version__
release = version

language = None
master_doc = "index"
source_suffix = ".rst"
templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"
todo_include_todos = False

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

# reStructuredText options ------------------------------------------------

# This makes `xyz` the same as ``xyz``.
default_role = "literal"

# This is appended to the bottom of all docs.
rst_epilog = f"""
.. |project| replace:: {project}
"""

# Options for autodoc extension -------------------------------------------

autodoc_default_options = {
    "members": True,
}

# Options for intersphinx extension ---------------------------------------

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
}

# -- Options for HTML output ----------------------------------------------

html_theme = "alabaster"

html_theme_options = {
    "description": "Endomorphisms of oriented transformation monoids",
    "page_width": "1200px",
    "fixed_sidebar": True,
    "sidebar_width": "300px",
}

html_sidebars = {
    "**": [
        "about.html",
        "navigation.html",
        "searchbox.html",
    ]
}

html_static_path = []

# -- Options for HTMLHelp output ------------------------------------------

htmlhelp_basename = "orientedmonoidsdoc"

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, "orientedmonoids", "orientedmonoids Documentation", [author], 1)
]
