"""Exception hierarchy shared by all modules."""


class SpanPolyError(Exception):
    """Base class for all library errors."""


class GroupMismatch(SpanPolyError):
    """Two inputs live over different groups."""


class BoundaryMismatch(SpanPolyError):
    """Domains/codomains do not line up for the requested operation."""


class ClassViolation(SpanPolyError):
    """A map fails the morphism-class flag required by the operation."""


class ResourceLimit(SpanPolyError):
    """A construction would exceed the configured size bound."""


class InvalidStructure(SpanPolyError):
    """Input data violates a structural invariant (bad table, non-equivariant map, ...)."""


class WorkspaceError(SpanPolyError):
    """Problem loading or resolving workspace files."""
