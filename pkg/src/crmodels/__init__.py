"""Exact computation with 2-nondegenerate model hypersurfaces in C⁴.

Modules: ``field`` (arithmetic in Q(i,√2,√3)), ``poly``/``series``/``linalg``
(exact algebra), ``model`` (the hypersurface of a pair (H, S(ζ))),
``symbols`` (bigraded and modified symbols), ``normal_form``,
``catalog`` (the homogeneous models), ``symmetry`` (infinitesimal
automorphisms), ``approx`` (float classification) and ``cli``.
"""

from __future__ import annotations

from .field import CoeffK
from .linalg import Mat2
from .model import Model
from .poly import Poly
from .series import BiSeries, SeriesMat, UniSeries

__version__ = "0.1.0"

__all__ = ["CoeffK", "Mat2", "Model", "Poly", "UniSeries", "BiSeries", "SeriesMat", "__version__"]
