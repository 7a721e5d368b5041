"""
Exceptions raised by the qcalc engine.

Every error derives from QCalcError so callers that only want to report a
failed check can catch one type.
"""


class QCalcError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(QCalcError, ZeroDivisionError):
    pass


class ModeMismatch(QCalcError):
    """Exact and numeric scalars were mixed in one operation."""


class IndexOutOfRange(QCalcError, IndexError):
    pass


class NonConvergent(QCalcError):
    pass


class UnknownGenerator(QCalcError, KeyError):
    pass


class AlgebraMismatch(QCalcError):
    """Operands live in different algebras, fields or truncations."""


class NonNilpotentArgument(QCalcError):
    pass


class NonUnitConstantTerm(QCalcError):
    pass


class RelationViolation(QCalcError):
    def __init__(self, rule, residual_text=""):
        self.rule = rule
        self.residual_text = residual_text
        message = f"images violate relation {rule}"
        if residual_text:
            message += f": residual {residual_text}"
        super().__init__(message)


class MissingSample(QCalcError, KeyError):
    pass


class PoleHit(QCalcError):
    pass


class TailNotConverged(QCalcError):
    pass


class DivergentUpperTail(QCalcError):
    pass


class HypothesisFailed(QCalcError):
    def __init__(self, precondition, detail=""):
        self.precondition = precondition
        message = f"hypothesis failed: {precondition}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class UnknownIdentity(QCalcError, KeyError):
    pass
