"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class RootBracketError(RuntimeError):
    """A bracketed root search found no sign change; the message reports the bracket."""


class DegenerateCellError(ValueError):
    """A polygon cell has (numerically) zero area or too few distinct vertices."""


class InvalidPerturbationError(ValueError):
    """A line perturbation makes two lines cross inside the open unit square."""
