"""Exception types shared across the package."""


class AnalyticUnavailableError(ValueError):
    """A closed-form quantity (spectrum, squared kernel, mean embedding)
    does not exist for the requested kernel."""


class NumericalConsistencyError(ArithmeticError):
    """A computed quantity violated a tolerance by enough to indicate a
    genuine numerical problem rather than roundoff."""


class ConfigError(ValueError):
    """Invalid experiment configuration."""
