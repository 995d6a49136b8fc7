"""
Exception hierarchy shared by the library and the command line.
"""


class ScavengerError(Exception):
    """Base class for every error raised by scavenger."""


class PreconditionError(ScavengerError, ValueError):
    """An operation was called with arguments outside its domain."""


class ParseError(ScavengerError):
    """
    Malformed text input.

    Args:
        message (str): What went wrong.
        line (int): 1-based line number, 0 when unknown.
        column (int): 1-based column number, 0 when unknown.
    """
    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message}")


class DegenerateError(ScavengerError):
    """A circle or triangle collapsed to a point."""


class EmptyIntersectionError(ScavengerError):
    """The requested locus has no real points."""


class CollinearError(ScavengerError):
    """Three points that must span a plane are collinear."""


class NotEmbeddableError(ScavengerError):
    """A triangle or circle has no rational realization."""


class UnsolvableFormError(ScavengerError):
    """A ternary quadratic form has no non-trivial integer zero."""


class SearchExhaustedError(ScavengerError):
    """
    A bounded search ran out of candidates.

    Args:
        message (str): What was searched for.
        bound (int): The bound that was exhausted.
    """
    def __init__(self, message, bound):
        self.bound = bound
        super().__init__(f"{message} (bound {bound})")


class ChainError(ScavengerError):
    """A constructed chain failed its own exact validation."""


class CertificateFormatError(ScavengerError):
    """A certificate is structurally malformed."""


class ConsistencyError(ScavengerError):
    """Two independent checks of the same claim disagree."""
