"""Exception types shared across the package."""


class QplabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(QplabError, ValueError):
    """Argument outside the operation's domain (negative degree, bad index...)."""


class EmptyVarietyError(QplabError):
    """The ideal's projective zero set is empty (e.g. the unit ideal)."""


class NondegeneracyError(QplabError):
    """Operation requires a nondegenerate variety (no linear forms in the ideal)."""


class MembershipError(QplabError):
    """A point claimed to lie on a variety does not."""


class RankError(QplabError):
    """Points fail the required linear independence."""


class IndeterminacyError(QplabError):
    """Rational map undefined on the whole source."""


class SamplingError(QplabError):
    """Point sampling failed repeatedly."""


class NoSamplerError(QplabError):
    """No parameterization and no fallback search available."""


class GenericityError(QplabError):
    """A genericity-based construction failed after bounded retries."""


class InvalidCoordinateChangeError(QplabError):
    """Singular matrix passed as a coordinate change."""


class BadContainerError(QplabError):
    """Claimed containing variety fails verification."""


class TotallyRealRequiredError(QplabError):
    """Pythagoras bounds are only emitted for totally real varieties."""


class BadBasePointError(QplabError):
    """Base point not on the curve being re-embedded."""


class NonEmbeddingError(QplabError):
    """Re-embedding map failed to be birational onto its image."""


class ExtractionError(QplabError):
    """Syzygy-variety extraction produced no verified candidate."""

    def __init__(self, message, candidate=None):
        super().__init__(message)
        self.candidate = candidate


class InputContractError(QplabError):
    """Operation precondition violated."""
