"""Exception types shared across the package."""


class CoinWalkError(Exception):
    """Base class for every error raised by coinwalk."""


class NonUnitaryInput(CoinWalkError):
    """A matrix that must be unitary failed the unitarity check."""


class ConvergenceFailure(CoinWalkError):
    """The eigensolver did not converge or produced an invalid decomposition."""


class DimensionMismatch(CoinWalkError):
    """Vector/matrix dimensions are inconsistent with the walk definition."""


class NotSquareDimension(CoinWalkError):
    """Partial trace requires a square matrix of perfect-square dimension."""


class DegenerateDispersion(CoinWalkError):
    """The dispersion relation is degenerate (sin^2(gamma) ~ 0) at this k."""


class DegenerateCoin(CoinWalkError):
    """Pauli-type coin: the asymptotic quadrature pipeline is not defined."""


class NormalizationError(CoinWalkError):
    """A state or weight function is not normalized to within tolerance."""


class NumericalFailure(CoinWalkError):
    """An internal numerical consistency check failed."""


class FormatError(CoinWalkError):
    """A text input (walk config, state grammar, angle literal) did not parse."""
