"""
Exception hierarchy shared by every package.
"""


class MulticoverError(Exception):
    """Base class for all errors raised by the engine."""


class InvalidSpaceError(MulticoverError):
    """A ground set, cover, metric or group failed validation."""


class CertificateError(MulticoverError):
    """A certificate is illegal or cannot be represented in the requested cover."""


class SearchBoundExceeded(MulticoverError):
    """A search over a lazy cover hit its configured bound before deciding."""


class StateSpaceExceeded(MulticoverError):
    """The solver memo table grew past its configured limit."""

    def __init__(self, limit: int, what: str = "memo entries"):
        super().__init__(f"State space limit of {limit} {what} exceeded")
        self.limit = limit


class ScheduleViolation(MulticoverError):
    """A neighborhood schedule does not satisfy a lifting condition."""

    def __init__(self, condition: str, detail: str):
        super().__init__(f"Condition {condition} violated: {detail}")
        self.condition = condition
        self.detail = detail


class RangeError(MulticoverError):
    """A generator chain or schedule is too short for the requested probe."""


class SchemaError(MulticoverError):
    """A run description or space description failed schema validation."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
