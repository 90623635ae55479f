"""Invariant almost Hermitian geometry on 6-dimensional nilpotent Lie algebras.

Core layers:

* :mod:`nilherm.exterior` -- exterior algebra on six generators.
* :mod:`nilherm.liealg` -- Lie algebras given dually by d, cohomology.
* :mod:`nilherm.hermitian` -- compatible almost complex structures.
* :mod:`nilherm.moduli` -- the moduli space of such structures and its loci.
* :mod:`nilherm.ghclass` -- torsion-class norms and the 16-class labels.
* :mod:`nilherm.catalog` -- built-in algebras and verification suites.
* :mod:`nilherm.service` -- FastAPI wrapper; :mod:`nilherm.cli` -- client.
"""

__version__ = "0.1.0"

from nilherm.exterior import Multivector, e, inner, star, wedge  # noqa: F401
