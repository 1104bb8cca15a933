"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph input (bad endpoint, self-loop, duplicate edge, bad file)."""


class PreconditionError(ValueError):
    """An operation was called on input outside its documented precondition."""


class ClassViolation(ValueError):
    """The graph is outside the class a polynomial solver is proven for."""


class UnsupportedGraphClass(ValueError):
    """The request needs machinery this package deliberately omits (e.g. general matching)."""


class BudgetExceeded(RuntimeError):
    """An exhaustive routine would exceed its configured size budget."""


class SearchTimeout(RuntimeError):
    """A search ran past its configured wall-clock limit."""
