"""Exception hierarchy.

Every error raised by this package derives from FklensError so callers can
catch broadly; the subclasses separate the failure classes that the CLI
maps to distinct exit codes.
"""


class FklensError(Exception):
    """Base class for all fklens errors."""


class DomainError(FklensError, ValueError):
    """Quantum numbers or grid indices outside their valid range.

    Raised for structural violations (|m| > j, broken triangle inequality,
    non-integral j - m, ...).  Distinct from in-range selection-rule zeros,
    which are returned as 0, never raised.
    """


class PrecisionError(FklensError, ValueError):
    """Requested representation exceeds the double-precision regime.

    Factorial ratios in the closed-form special functions exhaust IEEE
    doubles near (4j)!; beyond the supported maximum j the package fails
    loudly instead of degrading silently.
    """


class UnitarityError(FklensError, RuntimeError):
    """A kernel failed its build-time unitarity check.

    All construction error sources are rounding; a violation of the check
    threshold signals a bug, so the build aborts.
    """


class SpecMismatchError(FklensError, ValueError):
    """Image, kernel, or table attached to a different grid size."""


class ImageFormatError(FklensError, ValueError):
    """Malformed or unsupported image file content."""


class CacheError(FklensError):
    """Base class for kernel-cache failures."""


class CacheFormatError(CacheError):
    """Cache file header does not describe the requested kernel."""


class CacheVersionError(CacheError):
    """Cache file written by an unsupported format version."""


class CacheChecksumError(CacheError):
    """Cache file payload does not match its checksum."""
