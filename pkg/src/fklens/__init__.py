"""fklens: exact unitary transforms of pixellated images.

The finite two-dimensional oscillator carries a four-parameter unitary
group on N^2-pixel images: fractional Fourier transforms (isotropic and
anisotropic), rotations, and gyrations.  The same images live on an N x N
square grid or on 2j + 1 concentric rings, connected by a unitary map.
This package builds all of those operators as dense N^2 x N^2 unitary
matrices, exactly (no interpolation), plus a CLI, a persistent kernel
cache, and a brute-force verification oracle.
"""

from .errors import (CacheChecksumError, CacheError, CacheFormatError,
                     CacheVersionError, DomainError, FklensError,
                     ImageFormatError, PrecisionError, SpecMismatchError,
                     UnitarityError)
from .grids import GridSpec, PolarPoint
from .halfint import HalfInt

__version__ = "0.1.0"

__all__ = [
    "GridSpec", "HalfInt", "PolarPoint",
    "FklensError", "DomainError", "PrecisionError", "UnitarityError",
    "SpecMismatchError", "ImageFormatError",
    "CacheError", "CacheFormatError", "CacheVersionError", "CacheChecksumError",
    "__version__",
]
