"""Exception types raised by the design toolkit."""


class DesignError(Exception):
    """Base class for all toolkit errors."""


class DomainError(DesignError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ConfigError(DesignError):
    """A parameter file or run configuration is malformed."""


class NoBalancePointError(DesignError):
    """``N = d(N)`` has no solution inside the requested range."""


class IntegrationError(DesignError):
    """The time integrator could not reach the requested tolerance."""
