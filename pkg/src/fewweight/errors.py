"""Exception hierarchy.

Every error raised deliberately by the package derives from
:class:`FewWeightError` so the CLI can map them to a configuration
failure (exit status 2) in one place.
"""


class FewWeightError(ValueError):
    pass


# field construction and arithmetic
class NotPrime(FewWeightError):
    pass


class EvenCharacteristic(FewWeightError):
    pass


class ReducibleModulus(FewWeightError):
    pass


class SizeCapExceeded(FewWeightError):
    pass


class DivisionByZero(FewWeightError, ZeroDivisionError):
    pass


class MixedContexts(FewWeightError):
    pass


class NotADivisor(FewWeightError):
    pass


class NotInSubfield(FewWeightError):
    pass


class ZeroInput(FewWeightError):
    pass


class ParseError(FewWeightError):
    pass


# cyclotomic integers
class MixedPrime(FewWeightError):
    pass


# function families
class ParameterOutsideField(FewWeightError):
    pass


class ZeroParameter(FewWeightError):
    pass


class WrongCharacteristic(FewWeightError):
    pass


class OddDegree(FewWeightError):
    pass


class KDivisibleBy3(FewWeightError):
    pass


class DegreeTooSmall(FewWeightError):
    pass


class NotAdmissible(FewWeightError):
    pass


class CaseOther(FewWeightError):
    pass


class ClosedFormMismatch(FewWeightError):
    """A closed-form evaluation contradicted itself (e.g. depends on the chosen root)."""


# codes
class NotNegationClosed(FewWeightError):
    pass


class EmptyDefiningSet(FewWeightError):
    pass


class NotEven(FewWeightError):
    pass


class NonzeroAtOrigin(FewWeightError):
    pass


class MomentViolation(FewWeightError):
    def __init__(self, moment, lhs, rhs):
        self.moment = moment
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"Pless moment {moment} fails: {lhs} != {rhs}")


# verification
class HypothesisUnmet(FewWeightError):
    def __init__(self, source, condition):
        self.source = source
        self.condition = condition
        super().__init__(f"{source}: hypothesis unmet: {condition}")


class TableTranscriptionError(FewWeightError):
    """A closed-form table cell did not evaluate to an exact integer."""
