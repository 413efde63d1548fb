"""Exception hierarchy for ginv."""


class GinvError(Exception):
    pass


class InvalidRingSpec(GinvError, ValueError):
    pass


class RingMismatch(GinvError, TypeError):
    pass


class ShapeMismatch(GinvError, ValueError):
    pass


class NotIdempotent(GinvError, ValueError):
    pass


class NotEnumerable(GinvError):
    pass


class UnsupportedRing(GinvError):
    pass


class NonInvertible(GinvError, ArithmeticError):
    """Raised by exact inversion; ``rank`` records the rank deficit witness."""

    def __init__(self, message, rank=None, size=None):
        super().__init__(message)
        self.rank = rank
        self.size = size


NotInvertible = NonInvertible


class NoGroupInverse(GinvError, ArithmeticError):
    pass


class CornerViolation(GinvError, ValueError):
    pass


class MismatchedIdempotent(GinvError, ValueError):
    pass


class HypothesisFailed(GinvError):
    pass


class AssumptionViolated(HypothesisFailed):
    pass


class GenerationExhausted(GinvError):
    pass


class _Lookup(GinvError, KeyError):
    # KeyError quotes its message in str(); keep it plain
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class UnknownTheorem(_Lookup):
    pass


class UnknownPredicate(_Lookup):
    pass


class ParseError(GinvError, ValueError):
    pass
