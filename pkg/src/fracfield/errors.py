"""Exception taxonomy shared across the package.

Numerical failure modes are split by what the caller can do about them:
retry with different settings (quadrature/contour failures), switch
evaluation path (SlowDecay, OutOfRegime, NoClosedForm), or give up
because the requested object does not exist (DomainError, ValidityError).
"""


class FracfieldError(Exception):
    """Base class for all package-specific errors."""


class NonConvergence(FracfieldError):
    """A series failed to meet its truncation tolerance within the term cap."""


class DomainError(FracfieldError):
    """Parameters outside the range where the requested quantity is defined."""


class CoincidentPoles(FracfieldError):
    """Residue series hit a multiple pole (logarithmic case, unsupported)."""


class ValidityError(FracfieldError):
    """A transform identity's validity conditions fail for these parameters."""


class NoClosedForm(FracfieldError):
    """No catalogued closed-form expression for this problem."""


class NoSeriesForm(FracfieldError):
    """No catalogued series representation for this problem."""


class OutOfRegime(FracfieldError):
    """Asymptotic formula requested below its trust threshold."""


class SlowDecay(FracfieldError):
    """Integrand decays too slowly for direct quadrature; use another path."""


class QuadratureFailure(FracfieldError):
    """Quadrature error estimate exceeded the requested tolerance."""


class TailDominance(FracfieldError):
    """Truncated-tail bound exceeds the requested tolerance."""


class ContourFailure(FracfieldError):
    """Contour-inversion error estimate exceeded the requested tolerance."""


class DifferentiationFailure(FracfieldError):
    """Finite-difference differentiation could not reach the tolerance."""
