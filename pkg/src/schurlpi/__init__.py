"""Exact q-series tools for partitions with Schur's difference condition.

The submodules cover exact polynomials and truncated series (``algebra``,
``series``), partition enumeration (``partitions``), linked partition ideals
(``lpi``), multi-sum evaluation (``agsum``), q-difference equations and
recurrences (``qde``), the index-shift identities (``hyperg``), and the named
verification checks behind the command line (``checks``, ``cli``).
"""

from .algebra import MultiPoly, PolyMatrix
from .series import TruncatedSeries, series_eq

__all__ = ["MultiPoly", "PolyMatrix", "TruncatedSeries", "series_eq"]
__version__ = "0.1.0"
