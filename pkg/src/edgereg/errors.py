"""Exception hierarchy shared across the package."""


class EdgeRegError(Exception):
    """Base class for all package errors."""


class ParseError(EdgeRegError):
    """Malformed input text (edge list, graph6, ideal or complex file)."""


class PreconditionError(EdgeRegError):
    """An operation was called outside its stated domain."""


class SizeGateError(EdgeRegError):
    """The Koszul oracle refused an instance above its size gate."""


class InternalConsistencyError(EdgeRegError):
    """A theorem-backed self-check failed; this signals an implementation bug."""


class BoundViolationError(EdgeRegError):
    """A verified theorem inequality failed on a concrete instance.

    Carries a reproduction bundle so the failing case can be replayed.
    """

    def __init__(self, message, bundle=None):
        super().__init__(message)
        self.bundle = bundle or {}


class BudgetExceededError(EdgeRegError):
    """A budgeted computation ran out of time or subset quota.

    ``partial`` holds the best certified lower bound found so far (a
    RegularityResult with status "partial"), ``explored`` a short
    description of the range that was covered before the abort.
    """

    def __init__(self, message, partial=None, explored=None):
        super().__init__(message)
        self.partial = partial
        self.explored = explored
