"""Exception types raised by hybrident.

Every error derives from :class:`HybridEntError`, which is itself a
``ValueError`` so callers validating user input can catch either.
"""


class HybridEntError(ValueError):
    pass


class OverlapOutOfRange(HybridEntError):
    pass


class DimensionZero(HybridEntError):
    pass


class NotPSD(HybridEntError):
    pass


class CutoffInsufficient(HybridEntError):
    """Raised when a Fock cutoff loses more norm than the budget allows.

    ``suggested_cutoff`` carries the smallest cutoff that would satisfy the
    budget, when it could be determined.
    """

    def __init__(self, message, suggested_cutoff=None):
        super().__init__(message)
        self.suggested_cutoff = suggested_cutoff


class InvalidFamilyParams(HybridEntError):
    pass


class TrulyHybridInput(HybridEntError):
    pass


class NotNormalized(HybridEntError):
    pass


class WrongDims(HybridEntError):
    pass


class DimsMismatch(HybridEntError):
    pass


class NonRealResult(HybridEntError):
    pass


class InvalidX(HybridEntError):
    pass


class InvalidState(HybridEntError):
    pass
