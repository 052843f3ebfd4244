"""Exception hierarchy shared by all dinerq modules."""


class GameError(Exception):
    """Base class for all dinerq errors."""


class DomainError(GameError, ValueError):
    """An argument is outside its allowed domain (bad index, angle, count)."""


class ValidationError(GameError, ValueError):
    """A composite value fails its structural invariants (table, distribution, circuit)."""


class QasmError(GameError, ValueError):
    """QASM text cannot be parsed; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
