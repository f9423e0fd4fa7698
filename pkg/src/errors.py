from __future__ import annotations


class KtgError(Exception):
    """Base class for every error raised by the library."""


class SkeletonError(KtgError, ValueError):
    pass


class DiagramError(KtgError, ValueError):
    pass


class CellMismatchError(KtgError, ValueError):
    """A vector was combined with or reduced in the wrong (skeleton, degree) cell."""


class AlgebraError(KtgError, ArithmeticError):
    pass


class CertificateError(KtgError, RuntimeError):
    pass


class ParseError(KtgError, ValueError):
    def __init__(self, message: str, *, line: int | None = None, source: str | None = None) -> None:
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where = f"{where}{line}: "
        elif where:
            where = f"{where} "
        super().__init__(f"{where}{message}")
