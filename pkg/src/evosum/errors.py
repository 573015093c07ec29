"""Exception hierarchy shared by all evosum modules."""


class EvosumError(Exception):
    pass


class EmptyReferenceError(EvosumError, ValueError):
    """A story has no highlight text, or a metric got an empty reference."""


class EmptyArticleError(EvosumError, ValueError):
    pass


class EmptySentenceError(EvosumError, ValueError):
    pass


class EmptyCorpusError(EvosumError, ValueError):
    pass


class DimensionMismatchError(EvosumError, ValueError):
    pass


class CorpusIOError(EvosumError, OSError):
    pass


class WeightsFormatError(EvosumError, ValueError):
    """Raised when a weights file is malformed. ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
