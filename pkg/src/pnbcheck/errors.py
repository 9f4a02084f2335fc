"""Exception hierarchy shared by every pnbcheck module."""


class PnbError(Exception):
    """Base class for all pnbcheck errors."""


class InvalidNetError(PnbError):
    def __init__(self, net_name, violations):
        self.net_name = net_name
        self.violations = list(violations)
        super().__init__(f"net {net_name!r} is invalid: " + "; ".join(self.violations))


class CompositionError(PnbError):
    """Boundary arities do not match for a sequential composition."""

    def __init__(self, left_arity, right_arity, where=""):
        self.left_arity = left_arity
        self.right_arity = right_arity
        self.where = where
        loc = f" at {where}" if where else ""
        super().__init__(
            f"cannot compose{loc}: left operand has {left_arity} right port(s), "
            f"right operand has {right_arity} left port(s)"
        )


class InputError(PnbError):
    """A marking or argument refers to something that does not exist."""


class StepNotEnabledError(PnbError):
    pass


class BudgetExceededError(PnbError):
    def __init__(self, budget, what="states"):
        self.budget = budget
        super().__init__(f"state budget of {budget} {what} exceeded")


class TypeCheckError(PnbError):
    def __init__(self, path, left_arity, right_arity):
        self.path = path
        self.left_arity = left_arity
        self.right_arity = right_arity
        super().__init__(
            f"type error at node {path}: left operand has right arity {left_arity}, "
            f"right operand has left arity {right_arity}"
        )


class ParseError(PnbError):
    def __init__(self, message, line, column, token=None):
        self.line = line
        self.column = column
        self.token = token
        tok = f" near {token!r}" if token is not None else ""
        super().__init__(f"{line}:{column}: {message}{tok}")


class ArityError(PnbError):
    def __init__(self, first, second, op="operation"):
        self.first = first
        self.second = second
        super().__init__(f"{op}: arity mismatch {first} vs {second}")


class OpenBoundaryError(PnbError):
    def __init__(self, btype):
        self.btype = btype
        super().__init__(
            f"expression has open boundary of type {btype}; compose it with nets "
            f"that close every port so the root has type (0,0)"
        )
