"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands disagree on the number of letters d or on matrix sizes."""


class SizeLimitError(ValueError):
    """A desk-scale expansion or dimension cap would be exceeded."""


class LevelError(ValueError):
    """A matrix size beyond the generator family's maximum level was requested."""


class CertificationError(ValueError):
    """A polynomial failed numerical certification as a matrix identity."""


class SamplingExhaustedError(RuntimeError):
    """Rejection sampling did not reach the requested count.

    Carries the observed acceptance rate so callers can rescale proposals.
    """

    def __init__(self, message: str, acceptance_rate: float):
        super().__init__(message)
        self.acceptance_rate = acceptance_rate
