"""Exception hierarchy for the sliceregular package."""


class SliceRegularError(Exception):
    """Base class for all package errors."""


class DomainError(SliceRegularError, ValueError):
    """Input outside the mathematical domain of an operation."""


class FormatError(SliceRegularError, ValueError):
    """Structured input (JSON, block matrix) violates its required shape."""


class SingularityError(SliceRegularError, ArithmeticError):
    """Evaluation hit the zero locus of a denominator."""


class PairingError(SliceRegularError, ArithmeticError):
    """Doubled singular values of a complex adjoint failed to pair.

    The doubling is a theorem; a pairing failure signals an SVD bug, not
    a property of the input.
    """


class PreconditionError(SliceRegularError, ValueError):
    """A theorem-check fixture does not satisfy the theorem's hypothesis."""


class NotApplicableError(SliceRegularError):
    """The constructive decomposition's interior-maximum hypothesis fails."""


class ConvergenceError(SliceRegularError, ArithmeticError):
    """An iterative approximation exhausted its budget.

    Carries ``best_error`` and ``best_depth`` so callers can report how
    close the run got.
    """

    def __init__(self, message, best_error=None, best_depth=None):
        super().__init__(message)
        self.best_error = best_error
        self.best_depth = best_depth


class AssemblyError(SliceRegularError, ArithmeticError):
    """Assembled approximant missed its error budget; carries the measured sup."""

    def __init__(self, message, measured_sup=None):
        super().__init__(message)
        self.measured_sup = measured_sup
