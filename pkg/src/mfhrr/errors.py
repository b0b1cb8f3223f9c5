"""Exception types shared across the package."""


class MFHRRError(Exception):
    """Base class for all errors raised by this package."""


class UnknownVariable(MFHRRError):
    def __init__(self, name):
        super().__init__(f"unknown variable {name!r}")
        self.name = name


class PolySyntaxError(MFHRRError):
    def __init__(self, position, message="syntax error"):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ArityMismatch(MFHRRError):
    pass


class DimensionMismatch(MFHRRError):
    pass


class NotInModule(MFHRRError):
    pass


class NotZeroDimensional(MFHRRError):
    pass


class InfiniteLength(MFHRRError):
    pass


class NotAFactorization(MFHRRError):
    def __init__(self, message, product=None):
        super().__init__(message)
        self.product = product


class RingMismatch(MFHRRError):
    pass


class PotentialMismatch(MFHRRError):
    pass


class OddDimension(MFHRRError):
    pass


class NotIsolated(MFHRRError):
    pass


class ConnectionMismatch(MFHRRError):
    pass


class NonComposable(MFHRRError):
    pass


class NonCommutativeAmbient(MFHRRError):
    pass


class NotAMorphism(MFHRRError):
    pass


class UnsupportedChainShape(MFHRRError):
    pass
