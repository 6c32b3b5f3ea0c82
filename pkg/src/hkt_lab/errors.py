"""Exception hierarchy.

Structural misuse raises eagerly; mathematical checks that a caller may want
to inspect return result objects instead (see superalgebra.ClosureResult,
models.HktReport).  Everything raised by this package derives from
HktLabError so CLI entry points can map failures to exit codes uniformly.
"""


class HktLabError(Exception):
    """Base class for all library errors."""


class DimensionError(HktLabError):
    """Mismatched dimensions (covector count, variable count, basis size)."""


class StructureError(HktLabError):
    """An algebraic input is malformed: bad structure constants, a frame
    that is not a quaternion triple, a matrix that is not a complex
    structure, ..."""


class ValidationError(HktLabError):
    """A model failed compilation-time validation.

    kind identifies the failed check ("jacobi", "frame", "metric",
    "integrability", "orientation") and details carries the witness.
    """

    def __init__(self, kind: str, message: str, details=None):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.details = details


class ProjectionError(HktLabError):
    """A form left the enumerated coefficient span (polynomial degree cap).

    Raised instead of silently truncating, so exactness is never lost."""


class DegeneracyError(HktLabError):
    """A pairing or Gram matrix expected to be nondegenerate is singular."""


class ProportionalityError(HktLabError):
    """Two quantities expected to be exactly proportional are not; carries
    the offending pair for diagnostics."""

    def __init__(self, message: str, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right


class IdentityError(HktLabError):
    """An operator identity expected to hold exactly has a nonzero residual."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class UsageError(HktLabError):
    """Bad CLI or API usage (unknown suite name, missing fixture, ...)."""
