"""Domain errors with stable machine-readable codes.

Every error the engine (or the suggestion layer) can raise carries a
``code`` string; the HTTP layer maps codes onto status codes one-to-one,
so clients and tests can match on names instead of messages.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all protocol-level failures."""

    code = "domain-error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class AlreadyExistsError(DomainError):
    code = "already-exists"


class NotFoundError(DomainError):
    code = "not-found"


class GoneError(DomainError):
    code = "gone"


class ForbiddenError(DomainError):
    code = "forbidden"


class ValidationError(DomainError):
    code = "validation-error"


class DepthViolationError(DomainError):
    code = "depth-violation"


class NotTopLevelError(DomainError):
    code = "not-top-level"


class InvalidTargetError(DomainError):
    code = "invalid-target"


class ClusterFrozenError(DomainError):
    code = "cluster-frozen"


class AlreadyVotedError(DomainError):
    code = "already-voted"


class StaleActivityError(DomainError):
    code = "stale-activity"


class ConflictError(DomainError):
    code = "conflict"


class ProviderError(DomainError):
    code = "provider-error"


class ParseError(DomainError):
    code = "parse-error"


class ConstraintError(DomainError):
    code = "constraint-error"


ERROR_CODES = {
    cls.code: cls
    for cls in [
        AlreadyExistsError,
        NotFoundError,
        GoneError,
        ForbiddenError,
        ValidationError,
        DepthViolationError,
        NotTopLevelError,
        InvalidTargetError,
        ClusterFrozenError,
        AlreadyVotedError,
        StaleActivityError,
        ConflictError,
        ProviderError,
        ParseError,
        ConstraintError,
    ]
}
