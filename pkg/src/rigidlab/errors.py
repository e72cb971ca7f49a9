"""Exception types shared across the package.

Plain misuse (wrong shapes, bad indices, malformed arguments) raises
ValueError; the classes below mark conditions that depend on the numeric
content of the input, so callers can distinguish "you called this wrong"
from "this input is degenerate for the requested computation".
"""


class RigidLabError(Exception):
    """Base class for content-dependent failures."""


class SingularMatrixError(RigidLabError):
    """A matrix that must be invertible is not."""


class DegenerateConfigError(RigidLabError):
    """A point configuration violates a genericity/general-position requirement."""


class OnAffineSpanError(RigidLabError):
    """The sample point lies on the affine span of the pinned block."""


class ParallelSpanError(RigidLabError):
    """The sample direction is parallel to the affine span of the pinned block."""


class HypothesisViolatedError(RigidLabError):
    """Input fails a structural hypothesis of the requested classification."""


class NotIsostaticError(RigidLabError):
    """The base graph of an extension report is not generically isostatic."""


class BadSupportError(ValueError):
    """Extension support data is inconsistent (sizes, membership)."""


class ParseError(RigidLabError):
    """An input file or builtin token failed to parse or validate."""
