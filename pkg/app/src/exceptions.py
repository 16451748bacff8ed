# src/exceptions.py


class SensingCapacityError(Exception):
    """Base class for every error raised by sensecap."""


class DomainError(SensingCapacityError, ValueError):
    """An argument lies outside the domain of the operation."""


class RegimeError(DomainError):
    """A lemma precondition (e.g. d0 <= alpha) does not hold."""


class InfeasibleEnsembleError(DomainError):
    """The ensemble cannot be realised with the requested shape."""


class BudgetExceededError(SensingCapacityError):
    """Simulation or decoder work exceeds the configured budget."""
