"""Exception hierarchy. Domain errors map to CLI exit code 3, parse errors to 2."""


class GeophaseError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GeophaseError):
    """A model or numerical precondition was violated."""


class ExceptionalPoint(DomainError):
    """Eigenvalues and eigenvectors coalesce; no biorthogonal basis exists."""


class BrokenPhase(DomainError):
    """Operation defined only below the symmetry-breaking threshold (gamma < 1)."""


class DegenerateSpectrum(DomainError):
    """Coinciding eigenvalues: no return period / phase decomposition."""


class NonPositiveRate(DomainError):
    """Decay rate must be strictly positive."""


class SingularB(DomainError):
    """Real part of the operator is singular; second-order reduction inapplicable."""


class StepTooLarge(DomainError):
    """Integration step too coarse for the system's fastest frequency."""


class WrongRepresentation(DomainError):
    """Trajectory representation unsuitable for the requested operation."""


class ScaleSeparationViolated(DomainError):
    """Carrier/precession frequency ratio too small for envelope extraction."""


class UnexpectedResistor(DomainError):
    """Lossless circuit requested but a resistance was supplied."""


class SpecParseError(GeophaseError):
    """Malformed run specification (file or flags)."""
