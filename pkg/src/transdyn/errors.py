"""Exception hierarchy shared by every module."""


class DynamicsError(Exception):
    """Base class for all errors raised by transdyn."""


class MixedVariant(DynamicsError):
    pass


class SpaceMismatch(DynamicsError):
    pass


class UnsupportedSpace(DynamicsError):
    pass


class BudgetExceeded(DynamicsError):
    pass


class CapExceeded(BudgetExceeded):
    pass


class ErrorBudgetExceeded(BudgetExceeded):
    pass


class UnknownName(DynamicsError):
    pass


class InvalidParameter(DynamicsError):
    pass


class WordAbsent(DynamicsError):
    pass


class MalformedMatrix(DynamicsError):
    pass


class NotIrreducible(DynamicsError):
    pass


class NotAbelianDeclared(DynamicsError):
    pass


class MixedKind(DynamicsError):
    pass


class IncompatibleKinds(DynamicsError):
    pass


class VerificationFailed(DynamicsError):
    pass


class UnsupportedGenerator(DynamicsError):
    pass


class BadRational(DynamicsError, ValueError):
    pass


class ConfigError(DynamicsError):
    """Anything wrong with a run configuration."""


class ParseError(ConfigError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class UnknownSystemKind(ConfigError):
    pass
