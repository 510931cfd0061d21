"""Exception types shared across the package."""


class ZchainError(Exception):
    """Base class for all structured errors raised by this package."""


class DimensionMismatch(ZchainError, ValueError):
    pass


class IllDefined(ZchainError):
    """A matrix does not define a homomorphism on the given presentations."""


class NotAComplex(ZchainError):
    """d composed with d is not zero."""


class NotAChainMap(ZchainError):
    """Components do not commute with the differentials."""


class InfiniteGroup(ZchainError):
    """Group-ring constructions require a finite group."""


class NotFree(ZchainError):
    pass


class NotAcyclic(ZchainError):
    pass


class NotAcyclicFibration(ZchainError):
    pass


class NotContractible(ZchainError):
    pass


class NotMonoNotEpi(ZchainError):
    pass


class NotASplitting(ZchainError):
    pass


class NotLiftable(ZchainError):
    """Lifting square is not in one of the two supported configurations."""


class NotCofibration(ZchainError):
    pass


class PreconditionFailed(ZchainError):
    pass


class RankCapExceeded(ZchainError):
    """A materialized group would exceed the configured rank cap."""


class DocumentError(ZchainError):
    """Structured parse/validation failure for JSON documents."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = dict(details)
