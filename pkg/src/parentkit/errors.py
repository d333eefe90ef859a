"""Exception hierarchy.

Everything derived from :class:`ValidationError` maps to CLI exit code 1;
plain ``OSError`` maps to exit code 2.
"""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class TableParseError(ValidationError):
    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class EmptyTableError(ValidationError):
    pass


class SeparatorCollisionError(ValidationError):
    pass


class CorpusMismatchError(ValidationError):
    """Id sets of two corpus files disagree."""

    def __init__(self, message, missing=(), extra=()):
        self.missing = sorted(missing)
        self.extra = sorted(extra)
        parts = [message]
        if self.missing:
            parts.append("missing ids: " + ", ".join(self.missing))
        if self.extra:
            parts.append("unexpected ids: " + ", ".join(self.extra))
        super().__init__("; ".join(parts))


class InputFormatError(ValidationError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class StageOrderError(ValidationError):
    pass
