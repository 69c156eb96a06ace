"""Exception types shared across the package."""


class ContractError(ValueError):
    """A caller violated an operation's precondition (bad dims, ranges, ids)."""


class NumericError(ArithmeticError):
    """A numeric computation failed or produced a corrupted value."""


class EngineHalt(NumericError):
    """The scene's density matrix failed validation after a tick.

    Carries the validity diagnostics; the engine never continues past this.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ScriptError(ValueError):
    """A scenario script failed to parse or validate."""

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class WireError(ValueError):
    """A wire payload could not be decoded."""
