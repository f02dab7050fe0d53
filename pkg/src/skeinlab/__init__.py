"""skeinlab: an exact-arithmetic engine for Kauffman-bracket skein theory.

Computes colored Jones polynomials by cabling and Jones-Wenzl projector
insertion, evaluates theta and tetrahedral spin networks, builds integer
Khovanov homology from the delooped resolution cube, runs twist-region
stabilization experiments, and measures root-of-unity growth rates against
the volume of the regular ideal octahedron.
"""

__version__ = "0.1.0"

from .laurent import LaurentPoly, RationalFunc, qint, loop_value, unknot_colored

__all__ = [
    "LaurentPoly",
    "RationalFunc",
    "qint",
    "loop_value",
    "unknot_colored",
]
