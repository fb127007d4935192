"""Exception hierarchy shared by every module of the package."""


class RingCodesError(Exception):
    """Base class for all library errors."""


class SpecMismatchError(RingCodesError):
    """Two operands live in different rings (p, e or flavor differ)."""


class NonUnitError(RingCodesError):
    """Inversion of an element with zero constant digit."""


class ZeroElementError(RingCodesError):
    """Valuation split of the zero element."""


class GcdViolationError(RingCodesError):
    """A construction that requires gcd(n, p) = 1 was asked with p | n."""


class NotDivisorError(RingCodesError):
    """A polynomial expected to divide the modulus does not."""


class NotCoprimeError(RingCodesError):
    """A family of polynomials expected to be pairwise coprime is not."""


class NotMonicError(RingCodesError):
    """Division by a non-monic polynomial."""


class BudgetExceededError(RingCodesError):
    """An enumeration would exceed the configured budget.

    Carries the exact cardinality that was requested and, when a distance
    computation was interrupted, an (lower, upper) interval of bounds.
    """

    def __init__(self, message, cardinality=None, bounds=None):
        super().__init__(message)
        self.cardinality = cardinality
        self.bounds = bounds


class VerificationError(RingCodesError):
    """An internal re-verification of a claimed property failed.

    This is the only error that maps to CLI exit code 2: it means a
    theorem-backed prediction did not check out on the constructed object.
    """


class SearchExhaustedError(RingCodesError):
    """An exhaustive search finished without finding a witness."""


class UnsupportedError(RingCodesError):
    """The operation's hypotheses exclude the given input (e.g. p = 2)."""
