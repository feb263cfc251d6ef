"""Exception vocabulary shared by all pretlab modules."""


class PretlabError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(PretlabError, ValueError):
    """A parameter is outside its documented domain."""


class CapacityError(PretlabError):
    """A requested table or range exceeds the configured memory cap."""


class OutOfRangeError(PretlabError):
    """An integer falls outside the range a table can serve."""


class DivergenceError(PretlabError):
    """A series evaluation was requested outside its convergence region."""


class DegenerateError(PretlabError):
    """A denominator or pivot quantity is too close to zero to use."""


class InfeasibleError(PretlabError):
    """A constrained minimisation has an empty feasible set."""


class SignChangeError(PretlabError):
    """A scan found more sign changes than the model admits."""


class HypothesisUnmetError(PretlabError):
    """A monitored bound was invoked for data that fails its hypothesis."""


class UsageError(PretlabError):
    """Bad command line usage (maps to exit code 64)."""
