"""Exception hierarchy shared across the toolkit."""


class SimpevalError(Exception):
    """Base class for all toolkit errors."""


class SequenceTooShort(SimpevalError):
    """Input sequence has fewer tokens than the estimator requires."""


class DegenerateHorizon(SimpevalError):
    """Match-length profile has an empty evaluation horizon."""


class EmptyReference(SimpevalError):
    """Reference side of an overlap metric is empty."""


class DimensionMismatch(SimpevalError):
    """Embedding matrices do not share a common dimension."""


class EmptyMatrix(SimpevalError):
    """Embedding matrix has no rows."""


class ParseError(SimpevalError):
    """A file or payload could not be parsed."""


class TokenCountMismatch(SimpevalError):
    """Embedding rows do not line up with the expected token sequence."""


class ProviderTimeout(SimpevalError):
    """Embedding provider did not answer within the configured duration."""


class ProtocolError(SimpevalError):
    """Embedding provider answered outside the wire contract."""


class DuplicateSourceId(SimpevalError):
    """Manifest contains the same source id twice."""


class UnknownSourceId(SimpevalError):
    """Split assignment references a source id absent from the manifest."""


class EmptyInput(SimpevalError):
    """Operation received an empty collection where content is required."""


class RateOutOfRange(SimpevalError):
    """Masking rate must lie strictly between 0 and 1."""


class EmptySource(SimpevalError):
    """Diagnostic requires a non-empty source sequence."""


class InvalidOrder(SimpevalError):
    """N-gram order must be a positive integer."""


class EmptyScores(SimpevalError):
    """Early stopping needs at least one epoch score."""
