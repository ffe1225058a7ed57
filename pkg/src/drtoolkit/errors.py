"""Exception types shared across the toolkit."""


class DrToolkitError(Exception):
    """Base class for all toolkit errors."""


class NotFreeError(DrToolkitError):
    """Raised when a collapse is attempted along an edge that is not free."""


class SourceTargetMismatch(DrToolkitError):
    """Raised when composing maps whose middle complexes disagree."""


class NotADisk(DrToolkitError):
    """Raised when a disk-only operation is applied to a spherical diagram."""


class BoundaryMismatch(DrToolkitError):
    """Raised when two diagrams cannot be glued along their boundaries."""


class SingularDiagram(DrToolkitError):
    """Raised when a non-singular disk diagram is required."""


class BoundsExhausted(DrToolkitError):
    """A bounded search was truncated; absence of a result proves nothing."""


class NotAutomorphism(DrToolkitError):
    """Raised when a group generator is not an automorphism."""


class LimitExceeded(DrToolkitError):
    """Raised when a closure or enumeration exceeds its configured limit."""


class HasInversions(DrToolkitError):
    """Raised when an action with inversions reaches an inversion-free-only
    operation; pass the action through ``remove_inversions`` first."""


class OrbitClash(DrToolkitError):
    """Raised when an equivariant collapse step is inconsistent (a face meets
    the collapsing edge orbit more than once)."""


class EndpointsNotFixed(DrToolkitError):
    """Raised when an orbit-graph seed path does not join fixed vertices."""


class NotMinimal(DrToolkitError):
    """Raised when an orbit-graph seed path is not of minimal length."""


class PreconditionsNotCertified(DrToolkitError):
    """Raised when an operation requires certified hypotheses (simple
    connectivity, diagrammatic reducibility, no inversions) that fail."""


class TooLarge(DrToolkitError):
    """Raised when an input exceeds a hard guard (e.g. oracle face limit)."""


class ParseError(DrToolkitError):
    """Raised on malformed text input; carries a human-readable position."""


class UnknownGenerator(DrToolkitError):
    """Raised when a word references an undeclared generator."""


class UnknownName(DrToolkitError):
    """Raised when a standard-complex name is not recognised."""


class HashMismatch(DrToolkitError):
    """Raised when a certificate references a different input."""


class ReplayFailure(DrToolkitError):
    """Raised when a certificate witness fails to replay."""


class ConstructionError(DrToolkitError):
    """Raised when an equivariant construction detects an inconsistency that
    the ambient hypotheses should have excluded."""
