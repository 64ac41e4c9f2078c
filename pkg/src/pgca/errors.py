"""Exception taxonomy.

Every error carries a stable ``code`` string that is echoed in JSON reports.
The ``input_error`` flag decides the CLI exit class (2 for input problems,
1 for failed checks).
"""


class PgcaError(Exception):
    code = "Error"
    input_error = False

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class DivisionByZero(PgcaError, ZeroDivisionError):
    code = "DivisionByZero"
    input_error = True


class BasisMismatch(PgcaError, ValueError):
    code = "BasisMismatch"
    input_error = True


class OutOfWindow(PgcaError, ValueError):
    code = "OutOfWindow"
    input_error = True


class InvalidWindow(PgcaError, ValueError):
    code = "InvalidWindow"
    input_error = True


class WindowTooSmall(PgcaError, ValueError):
    code = "WindowTooSmall"
    input_error = True


class InvalidParameter(PgcaError, ValueError):
    code = "InvalidParameter"
    input_error = True


class InvalidInstance(PgcaError, ValueError):
    code = "InvalidInstance"
    input_error = True

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class MissingAnchor(PgcaError, ValueError):
    code = "MissingAnchor"
    input_error = True


class InfeasibleWitness(PgcaError):
    code = "InfeasibleWitness"


class NotInSpan(PgcaError):
    code = "NotInSpan"

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class TableMismatch(PgcaError):
    code = "TableMismatch"

    def __init__(self, message, point=None, expected=None, got=None):
        super().__init__(message)
        self.point = point
        self.expected = expected
        self.got = got


class ReplayFailed(PgcaError):
    code = "ReplayFailed"

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class ProbeSetTooSmall(PgcaError):
    code = "ProbeSetTooSmall"


class ParseError(PgcaError, ValueError):
    """Syntax error in element text, positioned by byte offset."""

    code = "ParseError"
    input_error = True

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)

    def to_dict(self):
        d = super().to_dict()
        d["offset"] = self.offset
        d["expected"] = list(self.expected)
        return d


class BasisMixError(ParseError):
    code = "BasisMixError"


class SchemaError(PgcaError, ValueError):
    code = "SchemaError"
    input_error = True

    def __init__(self, message, path="/"):
        self.path = path or "/"
        super().__init__(f"{self.path}: {message}")

    def to_dict(self):
        d = super().to_dict()
        d["path"] = self.path
        return d
