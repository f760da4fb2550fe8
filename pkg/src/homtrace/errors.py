"""Exception hierarchy.

Two families: ``ParameterError`` for inputs that fall outside what a routine
accepts (the CLI maps these to exit code 2), and ``ConsistencyError`` for
internal checks that failed and therefore indicate a bug or a falsified claim.
"""


class HomtraceError(Exception):
    pass


class ParameterError(HomtraceError, ValueError):
    pass


class ConsistencyError(HomtraceError, AssertionError):
    pass


class NonPrime(ParameterError):
    pass


class ReducibleModulus(ParameterError):
    pass


class NoPrimitiveElement(ConsistencyError):
    pass


class DivisionByZero(HomtraceError, ZeroDivisionError):
    pass


class ZeroArgument(ParameterError):
    pass


class ContextMismatch(ParameterError):
    pass


class WrongRing(ParameterError):
    pass


class LengthMismatch(ParameterError):
    pass


class EvenCharacteristic(ParameterError):
    pass


class NotADivisor(ParameterError):
    pass


class RepresentativeCheckFailed(ConsistencyError):
    pass


class BudgetExceeded(ParameterError):
    pass


class RankDeficient(ConsistencyError):
    pass


class Unsupported(ParameterError):
    pass


class OutsideTheorems(ParameterError):
    pass


class NoSemiprimitiveK(OutsideTheorems):
    pass


class HypothesisViolated(ParameterError):
    pass


class WitnessNotFound(ConsistencyError):
    pass


class Mismatch(ConsistencyError):
    pass
