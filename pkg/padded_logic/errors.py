class ContractViolation(ValueError):
    """A caller broke a documented precondition (index range, arity, shape)."""


class InputError(ValueError):
    """User supplied data (instance files, formulas, programs) is malformed."""
