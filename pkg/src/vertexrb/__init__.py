"""Exact verification of Rota-Baxter operators and dendriform splittings on vertex algebras.

Subpackages: ``exact`` (rationals, vectors, graded spans), ``series`` (two-variable
windows and killing powers), ``kernel`` (vertex algebra checks), ``zoo`` (example
algebras), ``rota_baxter``, ``dendriform`` and ``workbench`` (config-driven CLI).
"""

__version__ = "0.1.0"
