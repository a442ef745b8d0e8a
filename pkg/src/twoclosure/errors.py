"""Exception hierarchy.

The CLI maps the four top-level families onto exit codes, so every error
raised by the library derives from exactly one of them.
"""


class TwoClosureError(Exception):
    pass


class InputError(TwoClosureError, ValueError):
    """Malformed user input (exit code 4)."""


class CapExceeded(TwoClosureError):
    """A configured size limit would be exceeded (exit code 3)."""


class VerificationFailure(TwoClosureError):
    """A checked property did not hold (exit code 2)."""


class MalformedCycleText(InputError):
    pass


class RepeatedPoint(InputError):
    pass


class PointOutOfRange(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class ParseError(InputError):
    pass


class UnknownFamily(ParseError):
    pass


class BadParameter(ParseError):
    pass


class UnknownColor(InputError):
    pass


class NotPrime(InputError):
    pass


class NotASubgroup(InputError):
    pass


class NotNormal(InputError):
    pass


class NotTransitive(InputError):
    pass


class NotCoprime(InputError):
    pass


class NotAFactorization(InputError):
    pass


class NotInvariant(InputError):
    pass


class UnfaithfulDeltaAction(InputError):
    pass


class NotAHomomorphism(InputError):
    pass


class CatalogIOError(InputError):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class DegreeCapExceeded(CapExceeded):
    pass


class SearchBudgetExceeded(CapExceeded):
    pass


class UnfaithfulSpec(VerificationFailure):
    pass


class ContradictionWithTheorem(VerificationFailure):
    pass


class EngineDisagreement(VerificationFailure):
    pass
