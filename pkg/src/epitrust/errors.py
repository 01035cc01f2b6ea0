"""Exception types shared across the package."""


class EpitrustError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(EpitrustError, ValueError):
    """An argument violates an operation's preconditions."""


class ConfigError(EpitrustError, ValueError):
    """A configuration file, key, or override is malformed or out of range."""


class UnknownSourceError(EpitrustError, KeyError):
    """A report arrived from a source the agent holds no trust model for."""


class DegenerateDistributionError(EpitrustError, ArithmeticError):
    """A trust density lost all of its mass during an update."""
