"""Exception types shared across the package."""


class MccnetError(Exception):
    """Base class for all package-specific errors."""


class UnsupportedFormatError(MccnetError):
    """Audio file is valid but uses a format we refuse (non-PCM, depth != 16, >2 channels)."""


class CorruptHeaderError(MccnetError):
    """Audio container is malformed or truncated."""


class EmptyAudioError(MccnetError):
    """Operation needs a non-empty sample buffer."""


class DomainError(MccnetError):
    """Numeric argument outside the operation's domain."""


class ZeroVectorError(MccnetError):
    """Cosine similarity is undefined for an all-zero vector."""


class LengthMismatchError(MccnetError):
    """Feature vectors being compared differ in length."""


class TooFewClipsError(MccnetError):
    """A correlation network needs at least two clips."""


class ClipLongerThanPieceError(MccnetError):
    """Requested clip length exceeds the piece duration."""


class SingleNodeError(MccnetError):
    """Metric is undefined on fewer than two nodes."""


class NoEdgesError(MccnetError):
    """Metric is undefined on an edgeless graph."""


class InvalidParamsError(MccnetError):
    """Generator parameters violate the variant's preconditions."""


class MissingPositionError(MccnetError):
    """Layout does not cover every node being rendered."""


class EmptyGroupError(MccnetError):
    """Comparison group contains no metric vectors."""


class MissingWeightsError(MccnetError):
    """Group label has no built-in weight profile and none was supplied."""


class GraphParseError(MccnetError):
    """Graph file could not be parsed."""
