"""Exception and warning types shared across the package."""


class HolotreeError(Exception):
    """Base class for errors raised by this package."""


class DuplicateIdError(HolotreeError):
    """A vertex or edge id was declared twice."""


class UnknownEndpointError(HolotreeError):
    """An edge refers to a vertex that was never declared."""


class UnknownEdgeError(HolotreeError):
    """An edge id does not exist in the graph."""


class NotUnicyclicError(HolotreeError):
    """The subcomplex is not connected with exactly one circuit."""


class NotEulerZeroError(HolotreeError):
    """Some component has nonzero Euler characteristic."""


class MissingPhaseError(HolotreeError):
    """A bundle was built without a phase for some edge."""


class MissingGaugeValueError(HolotreeError):
    """A gauge transformation is missing a value at some vertex."""


class ForeignCircuitError(HolotreeError):
    """A circuit mentions edges outside the bundle's graph."""


class StaleCorrespondenceError(HolotreeError):
    """A subdivision record does not belong to this bundle's graph."""


class DisconnectedError(HolotreeError):
    """The operation requires a connected graph."""


class BasisMismatchError(HolotreeError):
    """Chain vectors live on different bases or degrees."""


class NonSquareError(HolotreeError):
    """Determinants require a square operator."""


class AssumptionViolatedError(HolotreeError):
    """The twisted degree-0 homology of the ambient graph is nonzero."""


class SingularTreeSystemError(HolotreeError):
    """A restricted boundary system could not be solved reliably."""


class NoForestsError(HolotreeError):
    """No spanning forest cleared the holonomy threshold."""


class InvalidWError(HolotreeError):
    """Weight exponents violate the dominance inequality."""


class GraphSyntaxError(HolotreeError):
    """Malformed graph file or chain literal."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        msg = super().__str__()
        if self.line is None:
            return msg
        if self.column is None:
            return f"{msg} (line {self.line})"
        return f"{msg} (line {self.line}, column {self.column})"


class GraphSemanticError(HolotreeError):
    """Well-formed input with inconsistent content."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line

    def __str__(self):
        msg = super().__str__()
        if self.line is None:
            return msg
        return f"{msg} (line {self.line})"


class ConditioningWarning(UserWarning):
    """Circuit holonomy close enough to 1 to make downstream solves ill conditioned."""
