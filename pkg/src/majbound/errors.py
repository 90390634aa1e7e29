"""Exception hierarchy shared by all majbound modules."""


class MajboundError(Exception):
    """Base class for every error raised by this package."""


class InvalidDistribution(MajboundError, ValueError):
    pass


class IncompatibleVectors(MajboundError, ValueError):
    pass


class NoAscent(MajboundError):
    """Raised by ``flatten_once`` when the input is already non-increasing."""


class EmptyInput(MajboundError, ValueError):
    pass


class NotHermitian(MajboundError, ValueError):
    pass


class EigensolverFailure(MajboundError, RuntimeError):
    pass


class DimensionMismatch(MajboundError, ValueError):
    pass


class InvalidDimension(MajboundError, ValueError):
    pass


class InvalidSpectrum(MajboundError, ValueError):
    pass


class InvalidMeasurement(MajboundError, ValueError):
    pass


class IndexOutOfRange(MajboundError, IndexError):
    pass


class EnumerationTooLarge(MajboundError, RuntimeError):
    pass


class InvalidOrder(MajboundError, ValueError):
    pass


class NotUpperBound(MajboundError, ValueError):
    pass


class UnsupportedDimension(MajboundError, ValueError):
    pass
