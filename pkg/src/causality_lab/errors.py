"""Exception hierarchy. Precondition failures map to CLI exit code 2,
numerical failures to exit code 3."""


class CausalityLabError(Exception):
    """Base class for all package errors."""


class PreconditionError(CausalityLabError):
    """An operation was called outside its contract."""


class NumericalError(CausalityLabError):
    """An internal numerical procedure failed to produce a usable result."""


class MalformedSpecError(PreconditionError):
    """Model descriptor does not name a supported kind or has bad parameters."""


class SignatureCheckError(CausalityLabError):
    """Sampled metric does not have Lorentzian signature (m, 1)."""


class NonpositiveFactorError(PreconditionError):
    """Conformal factor is not strictly positive at a sample point."""


class HoleOutsideDomainError(PreconditionError):
    """Excision center violates the base model's domain predicate."""


class DimensionMismatchError(PreconditionError):
    """Coordinate vector length does not match the model dimension."""


class DomainError(PreconditionError):
    """An event or region lies outside the model's chart domain."""


class NonNullDirectionError(PreconditionError):
    """Shooting direction is not null within tolerance."""


class StepNonpositiveError(PreconditionError):
    """Integrator step must be positive."""


class IdenticalEventsError(PreconditionError):
    """Pairwise operation called on a single event."""


class DifferentModelsError(PreconditionError):
    """Events or paths belong to different models."""


class NoncausalChordError(PreconditionError):
    """A curve chord is not future causal.

    Attributes:
        segment: index of the offending chord.
    """

    def __init__(self, segment: int, message: str = ""):
        self.segment = segment
        super().__init__(message or f"chord {segment} is not future causal")


class BackendUnsupportedError(PreconditionError):
    """Requested distance backend is not defined for this model kind."""


class NonconvergentSequenceError(PreconditionError):
    """Event sequence tail does not converge to the declared limit."""


class ParameterRangeError(PreconditionError):
    """Scalar parameter outside its documented range."""


class ScenarioError(PreconditionError):
    """Scenario config failed to parse or validate.

    Attributes:
        key: dotted path of the offending config key, when known.
    """

    def __init__(self, message: str, key: str | None = None):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)
