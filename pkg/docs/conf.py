# Sphinx configuration for deltalf.
#
# The module reference under docs/api is regenerated by sphinx-apidoc on every
# build, so it is never committed.

import os
import shutil
import sys

__location__ = os.path.dirname(__file__)

sys.path.insert(0, os.path.join(__location__, "../src"))

from sphinx.ext import apidoc  # noqa: E402

output_dir = os.path.join(__location__, "api")
module_dir = os.path.join(__location__, "../src/deltalf")
shutil.rmtree(output_dir, ignore_errors=True)
try:
    apidoc.main(["--implicit-namespaces", "-f", "-o", output_dir, module_dir])
except Exception as e:
    print(f"Running `sphinx-apidoc` failed!\n{e}", file=sys.stderr)

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.autosummary",
    "sphinx.ext.viewcode",
    "sphinx.ext.doctest",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "deltalf"
copyright = "2024-2026, cdohmen"

try:
    from deltalf import __version__ as version
except ImportError:
    version = ""

if not version or version.lower() == "unknown":
    version = os.getenv("READTHEDOCS_VERSION", "unknown")
release = version

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store", ".venv"]
pygments_style = "sphinx"

html_theme = "alabaster"
html_theme_options = {"sidebar_width": "300px", "page_width": "1200px"}
htmlhelp_basename = "deltalf-doc"

python_version = ".".join(map(str, sys.version_info[0:2]))
intersphinx_mapping = {
    "python": ("https://docs.python.org/" + python_version, None),
    "lark": ("https://lark-parser.readthedocs.io/en/stable", None),
    "click": ("https://click.palletsprojects.com/en/stable", None),
}

print(f"loading configurations for {project} {version} ...", file=sys.stderr)
