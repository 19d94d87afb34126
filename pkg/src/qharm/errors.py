"""Exception types shared across the package."""


class PoleError(ValueError):
    """Evaluation requested within the configured epsilon of a pole."""


class SpectrumError(ValueError):
    """Resolvent argument too close to the spectrum of the diagonal symbol."""


class CancellationError(ArithmeticError):
    """Alternating series abandoned because cancellation destroys accuracy."""


class ToleranceError(RuntimeError):
    """Requested tolerance unreachable within the configured term budget."""


class LatticeWindowError(ValueError):
    """Quotient lattice window too small for the requested computation."""


class WindowOverflowError(RuntimeError):
    """Crown-window extension required by a multiplier exceeds the cap."""


class QuadratureError(RuntimeError):
    """Contour quadrature failed to converge under node doubling."""
