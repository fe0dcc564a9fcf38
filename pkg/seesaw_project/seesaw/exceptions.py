"""Exception hierarchy shared by the seesaw computations."""


class SeesawError(ValueError):
    """Base class for every error raised by the seesaw library modules."""


class NotPrimeError(SeesawError):
    pass


class ZeroArgumentError(SeesawError):
    pass


class NormMismatchError(SeesawError):
    pass


class BruhatPatternError(SeesawError):
    """Raised when a matrix does not fit the coupled block pattern of a torus image."""

    def __init__(self, case, message):
        self.case = case
        super().__init__(f"[{case}] {message}")


class ConductorError(SeesawError):
    pass


class ComputationError(SeesawError):
    """A numerical computation did not reach its certified accuracy."""


class TruncationError(ComputationError):
    """The requested precision cannot be met with the configured lattice radius."""

    def __init__(self, message, suggested_radius):
        self.suggested_radius = suggested_radius
        super().__init__(f"{message} (suggested radius: {suggested_radius})")


class NormalizationError(ComputationError):
    pass


class CaseNotMatchedError(SeesawError):
    """No row of the local constant table matches the given predicates."""

    def __init__(self, predicates):
        self.predicates = predicates
        described = ", ".join(f"{key}={value}" for key, value in sorted(predicates.items()))
        super().__init__(f"no table row for predicate combination: {described}")


class PrecisionUnreachableError(ComputationError):
    def __init__(self, message, achieved):
        self.achieved = achieved
        super().__init__(f"{message} (achieved error bound: {achieved})")


class QuadratureError(ComputationError):
    pass


class UnsupportedFieldError(SeesawError):
    pass


class VerificationFailed(SeesawError):
    """A verification report came back with failures."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
