"""Exception types shared across the package."""


class QcError(Exception):
    """Base class for all qckit errors."""


class InvalidArgumentError(QcError, ValueError):
    """An argument violates an operation's precondition."""


class CapacityError(QcError):
    """A request exceeds a fixed size limit (register width, matrix size)."""


class UnknownGateError(QcError, LookupError):
    """A gate name is not in the registry."""

    def __init__(self, name: str, message: str | None = None):
        self.name = name
        super().__init__(message or f"unknown gate {name!r}")


class QasmError(QcError):
    """A circuit program failed to parse. Always carries a source position."""

    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class QasmLexError(QasmError):
    pass


class QasmSyntaxError(QasmError):
    pass


class QasmUnknownGateError(QasmError):
    def __init__(self, name: str, line: int, column: int):
        self.name = name
        super().__init__(f"unknown gate {name!r}", line, column)


class QasmIndexError(QasmError):
    pass


class QasmUndeclaredRegisterError(QasmError):
    pass


class QasmCapacityError(QasmError, CapacityError):
    pass
