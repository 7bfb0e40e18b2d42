"""Exception types shared across the toolkit."""


class FccError(ValueError):
    """Base class for all toolkit errors."""


class LengthMismatch(FccError):
    pass


class InvalidParameter(FccError):
    pass


class ContiguityViolation(FccError):
    """A function ball is not an interval of the label order.

    ``witness`` is the first message (in lexicographic order) whose ball has a gap.
    """

    def __init__(self, witness, rho):
        self.witness = witness
        self.rho = rho
        super().__init__(f"function ball of radius {rho} around {witness} is not contiguous")


class LambdaTooLarge(FccError):
    def __init__(self, lam, limit):
        self.lam = lam
        self.limit = limit
        super().__init__(f"function is only locally {lam}-bounded, construction needs <= {limit}")


class InvalidParityCode(FccError):
    pass


class ThresholdOutOfRange(FccError):
    pass


class DistanceRequirementViolation(FccError):
    def __init__(self, pair, required, actual):
        self.pair = pair
        self.required = required
        self.actual = actual
        super().__init__(f"pair {pair} requires distance {required}, got {actual}")


class SearchBudgetExceeded(FccError):
    """Raised instead of returning an unproven answer.

    ``interval`` is the best known ``(lower, upper)`` range for the searched
    quantity (``upper`` may be None).
    """

    def __init__(self, message, interval=(None, None)):
        self.interval = interval
        super().__init__(f"{message}; best known interval {interval}")


class ConfigError(FccError):
    pass
