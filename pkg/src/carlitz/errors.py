"""Exception taxonomy shared by all carlitz modules."""


class CarlitzError(Exception):
    """Base class for all errors raised by this package."""


class IncompatibleRingError(CarlitzError):
    """Operands live in different coefficient rings or polynomial rings."""


class InvalidFieldError(CarlitzError):
    """A finite-field description is invalid (non-prime p, reducible modulus, ...)."""


class InvalidInputError(CarlitzError):
    """An argument violates an operation's preconditions (zero polynomial, ...)."""


class UndefinedGCDError(InvalidInputError):
    """gcd(0, 0) requested."""


class OverflowLimitError(CarlitzError):
    """An exponent or size limit was exceeded; checked, never silent."""


class ParseError(CarlitzError):
    """Malformed textual input (polynomials, provider files, twist specs)."""


class ProviderInconsistencyError(CarlitzError):
    """A matrix provider's declared metadata contradicts its contents."""


class WindowSelectionError(CarlitzError):
    """The requested coefficient window of an L-polynomial is unavailable."""


class BudgetExceededError(CarlitzError):
    """An enumeration would exceed the configured point budget."""

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class GroebnerTimeout(CarlitzError):
    """A basis computation hit its time limit; no partial answer is kept."""


class ConsistencyError(CarlitzError):
    """The two independent census pipelines disagree; carries witnesses."""

    def __init__(self, message, witnesses=None):
        super().__init__(message)
        self.witnesses = witnesses or []


class SymmetryViolationError(CarlitzError):
    """A sampled symmetry assumption failed; carries the witness point."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
