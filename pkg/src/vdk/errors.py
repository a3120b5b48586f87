"""Exception hierarchy for the vdk package.

Everything raised on purpose derives from VdkError so callers (and the
command line driver) can distinguish bad input from actual bugs.
"""


class VdkError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(VdkError):
    """Input text could not be decoded or parsed at all."""


class SchemaError(VdkError):
    """Parsed input is missing required fields or holds the wrong types."""


class ValidationError(VdkError):
    """Structurally invalid data: duplicate ids, broken trees, bad values."""


class CycleError(ValidationError):
    """A chain of reply references loops back on itself."""

    def __init__(self, conversation_id: str, message: str | None = None):
        self.conversation_id = conversation_id
        if message is None:
            message = f"reply references form a cycle in conversation {conversation_id!r}"
        super().__init__(message)


class ConfigError(VdkError):
    """A configuration value is out of range or inconsistent."""
