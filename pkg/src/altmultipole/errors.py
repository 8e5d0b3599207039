"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class SingularityError(ArithmeticError):
    """Evaluation requested at a point where the quantity is singular."""


class ConfigurationError(ValueError):
    """Inconsistent basis, knot, or run configuration."""


class ModelDomainError(ValueError):
    """Physical model parameters outside the range the model supports."""


class UnsupportedConfigurationError(ValueError):
    """A configuration the energy assembly deliberately does not cover."""


class OverlapNotPositiveDefiniteError(RuntimeError):
    """Generalized eigenproblem rejected: the overlap matrix is not positive definite."""
