"""Exception hierarchy.

Every precondition failure raises a subclass of GPCodeError carrying the
name of the violated condition, so callers (and the CLI) can report it
without parsing message strings.
"""


class GPCodeError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(GPCodeError):
    def __init__(self, p):
        super().__init__(f"p = {p} is not prime")
        self.p = p


class FieldTooLarge(GPCodeError):
    def __init__(self, q, bound):
        super().__init__(f"q = {q} exceeds the field size bound {bound}")
        self.q = q
        self.bound = bound


class NotADivisor(GPCodeError):
    def __init__(self, d, n):
        super().__init__(f"{d} does not divide {n}")
        self.d = d
        self.n = n


class DirectedGraph(GPCodeError):
    pass


class NotConnected(GPCodeError):
    pass


class TooLargeForOracle(GPCodeError):
    def __init__(self, q, bound):
        super().__init__(f"q = {q} exceeds the brute-force oracle bound {bound}")


class BudgetExceeded(GPCodeError):
    def __init__(self, cost, budget):
        super().__init__(
            f"work estimate {cost} exceeds the budget {budget}; "
            f"raise --budget to force"
        )
        self.cost = cost
        self.budget = budget


class BridgeHypothesisFailed(GPCodeError):
    pass


class NonIntegralWeight(GPCodeError):
    pass


class EmptyBase(GPCodeError):
    pass


class DivisibilityFailed(GPCodeError):
    def __init__(self, b, value):
        super().__init__(f"b = {b} does not divide {value}")


class NotSemiprimitive(GPCodeError):
    pass


class NotPrimitiveDivisor(GPCodeError):
    def __init__(self, n, p, m):
        super().__init__(f"{n} is not a primitive divisor of {p}^{m} - 1")


class NoSolution(GPCodeError):
    pass


class PreconditionFailed(GPCodeError):
    pass


class HypothesesFailed(GPCodeError):
    pass


class CacheError(GPCodeError):
    pass
