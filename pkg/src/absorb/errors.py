"""Exception types shared across the package."""


class AbsorbError(Exception):
    """Base class for all package-specific errors."""


class LengthNotEvaluable(AbsorbError):
    """Word length is not congruent to 1 mod (arity - 1), so no product exists."""


class NotAssociative(AbsorbError):
    """Operation expected an associative table."""


class NotClosed(AbsorbError):
    """Subset is not closed under the table's operation."""


class NotProperSubuniverse(AbsorbError):
    """Subuniverse equals the full carrier where a proper one is required."""


class InvalidArityTarget(AbsorbError):
    """Target arity for a power algebra is not 1 mod (arity - 1)."""


class BudgetExceeded(AbsorbError):
    """Requested enumeration or scan exceeds the configured budget."""


class PreconditionsUnmet(AbsorbError):
    """Operation invoked outside its stated preconditions."""


class AttemptCapExhausted(UserWarning):
    """Random sampling hit its attempt cap before producing the requested
    number of tables.  Reported via warnings.warn, never raised: the stream
    simply ends early."""
