"""Exception hierarchy shared by all apwords modules."""


class ApwordsError(Exception):
    """Base class for errors raised by this package."""


class AlphabetError(ApwordsError):
    """Alphabet mismatch, wrong arity, or unknown symbol."""


class EmptyPatternError(ApwordsError):
    """An occurrence scan was asked for the empty word."""


class BoundsError(ApwordsError, IndexError):
    """A segment or index lies outside a finite word."""


class BudgetError(ApwordsError):
    """A construction would exceed its materialization budget."""


class InsufficientDataError(ApwordsError):
    """The available prefix is too short to certify the requested check.

    ``required`` carries the minimal sufficient prefix length when known.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class FormatError(ApwordsError, ValueError):
    """A definition file or serialized word failed to parse.

    ``line`` is the 1-based line number when known.
    """

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
