"""Exception types shared across the package."""


class CircleMechError(Exception):
    """Base class for all domain errors raised by this package."""


class EvenAgentCount(CircleMechError):
    """An operation that needs an odd number of agents got an even one."""


class EmptyInstance(CircleMechError):
    """No agent positions were supplied."""


class InvalidProfile(CircleMechError):
    """An arc profile has negative entries or does not sum to one."""


class InvalidParams(CircleMechError):
    """A numeric parameter falls outside its documented domain."""


class IndexOutOfRange(CircleMechError):
    """An agent index does not exist in the instance."""


class CaseViolation(CircleMechError):
    """(s, t) falls outside the requested two-pair case."""


class RegionViolation(CircleMechError):
    """A profile fails the membership conditions of a route region."""


class PreconditionViolation(CircleMechError):
    """A structural precondition of the operation does not hold."""


class BudgetExceeded(CircleMechError):
    """A search would exceed its evaluation budget."""
