"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Input outside an operation's domain (bad shape, non-finite value, ...)."""


class DegenerateInputError(InvalidInputError):
    """Geometry too degenerate to evaluate (repeated coordinates, empty boxes)."""


class DegenerateParameterError(ArithmeticError):
    """A parameter value collapses an otherwise nonsingular construction."""


class SingularEvaluationError(ArithmeticError):
    """Evaluation requested exactly on a singular locus."""


class SeriesOverflowError(OverflowError):
    """Series argument large enough to overflow double precision."""


class EvaluationError(ArithmeticError):
    """An integrand callback produced a non-finite value."""


class InternalConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""
