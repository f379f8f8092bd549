"""Exception hierarchy.

Every error raised by the library derives from :class:`RelnetError` and
carries a short ``category`` string the CLI reports on stderr.
"""


class RelnetError(Exception):
    category = "error"


# -- outcome construction ---------------------------------------------------

class OutcomeError(RelnetError, ValueError):
    category = "invalid-outcome"


class DuplicateVariable(OutcomeError):
    pass


class Disconnected(OutcomeError):
    pass


class UnknownName(OutcomeError, KeyError):
    category = "unknown-name"

    def __str__(self):
        return Exception.__str__(self)


class DanglingEdgeIndex(OutcomeError, IndexError):
    pass


class UnobservedValueUsed(OutcomeError):
    pass


# -- counting ---------------------------------------------------------------

class NonIntegralRecursion(RelnetError, ArithmeticError):
    category = "counting"


class EnumerationCapExceeded(RelnetError):
    category = "cap-exceeded"


# -- network ----------------------------------------------------------------

class ZeroWeight(RelnetError, ValueError):
    category = "invalid-weight"


class UnknownVariable(UnknownName):
    pass


class UnknownValue(UnknownName):
    pass


class AllUnobserved(RelnetError, ZeroDivisionError):
    category = "all-unobserved"


class ZeroConditionMass(RelnetError, ZeroDivisionError):
    category = "zero-condition-mass"


# -- inference --------------------------------------------------------------

class NotFactorized(RelnetError):
    category = "not-factorized"

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class EmptyJoint(RelnetError):
    category = "empty-joint"


class ContradictoryEvidence(RelnetError):
    category = "contradictory-evidence"


# -- interop ----------------------------------------------------------------

class NegativeValue(RelnetError, ValueError):
    category = "negative-value"


class ColumnNotNormalized(RelnetError, ValueError):
    category = "column-not-normalized"


class CapExceeded(EnumerationCapExceeded):
    pass


# -- io ---------------------------------------------------------------------

class ParseError(RelnetError, ValueError):
    category = "parse-error"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantViolation(RelnetError, ValueError):
    category = "invariant-violation"
