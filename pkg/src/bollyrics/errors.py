"""Exception types shared across the package."""


class BollyricsError(Exception):
    """Base class for all errors raised by this package."""


class CorpusFormatError(BollyricsError):
    """A corpus/annotations/table file is unreadable or malformed."""


class ModelFormatError(BollyricsError):
    """A serialized model or index file failed validation."""


class UnseenContextError(BollyricsError, KeyError):
    """A context was queried that the model never observed in training."""


class SchemeError(BollyricsError, ValueError):
    """A rhyme scheme string is invalid."""


class AllocationError(BollyricsError):
    """A rhyme scheme cannot be mapped onto the available sound groups."""
