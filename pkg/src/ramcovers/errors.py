"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""


class RamCoversError(Exception):
    code = "Error"


class NotPrime(RamCoversError, ValueError):
    code = "NotPrime"


class NotIrreducible(RamCoversError, ValueError):
    code = "NotIrreducible"


class FieldTooLarge(RamCoversError, ValueError):
    code = "FieldTooLarge"


class DivisionByZero(RamCoversError, ZeroDivisionError):
    code = "DivisionByZero"


class ZeroMap(RamCoversError, ValueError):
    code = "ZeroMap"


class ConstantMap(RamCoversError, ValueError):
    code = "ConstantMap"


class InseparableMap(RamCoversError, ValueError):
    code = "InseparableMap"


class TruncationExhausted(RamCoversError, RuntimeError):
    code = "TruncationExhausted"


class ConditionViolated(RamCoversError, ValueError):
    code = "ConditionViolated"


class BudgetExceeded(RamCoversError, RuntimeError):
    code = "BudgetExceeded"


class PreconditionViolated(RamCoversError, ValueError):
    code = "PreconditionViolated"


class TooMuchRamification(RamCoversError, ValueError):
    code = "TooMuchRamification"


class FieldMismatch(RamCoversError, ValueError):
    code = "FieldMismatch"


class ParseError(RamCoversError, ValueError):
    code = "ParseError"

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at offset {position})")
        self.position = position
