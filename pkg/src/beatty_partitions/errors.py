"""Exception hierarchy shared by every module."""


class BeattyError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class ParseError(BeattyError, ValueError):
    pass


class DomainError(BeattyError, ValueError):
    pass


class RationalityError(DomainError):
    pass


class CertificationError(BeattyError, ArithmeticError):
    """Raised when a floor or partial quotient cannot be certified at the precision cap."""


class MissingBoundError(BeattyError):
    pass


class BracketError(BeattyError, ArithmeticError):
    pass


class ResourceError(BeattyError):
    exit_code = 2


class ToleranceError(BeattyError, ArithmeticError):
    exit_code = 2
