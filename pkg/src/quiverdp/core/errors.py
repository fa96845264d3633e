"""Error taxonomy for quiverdp

Library code raises these; the CLI maps each class to its exit code.
"""


class QuiverDPError(ValueError):
    """Base error for all quiverdp failures"""

    exit_code = 1


class QuiverParseError(QuiverDPError):
    """Quiver, polynomial or degree text could not be decoded"""

    exit_code = 2


class QuiverValidationError(QuiverDPError):
    """Quiver data violates the mixed-quiver or zigzag conditions"""

    exit_code = 3

    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class CapExceededError(QuiverDPError):
    """An enumeration or oracle guard tripped"""

    exit_code = 4

    def __init__(self, message: str, bound: int, cap: int):
        super().__init__(f"{message} (bound {bound}, cap {cap})")
        self.bound = bound
        self.cap = cap


class CheckFailedError(QuiverDPError):
    """A verification identity failed; carries the counterexample"""

    exit_code = 5

    def __init__(self, message: str, counterexample: str | None = None):
        super().__init__(message)
        self.counterexample = counterexample


class UnsupportedError(QuiverDPError):
    """Operation is not defined for the requested characteristic"""

    exit_code = 6
