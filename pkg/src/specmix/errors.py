"""Exception hierarchy shared across the package."""


class SpecmixError(Exception):
    """Base class for all package errors."""


class InputError(SpecmixError):
    """Invalid user-supplied data (graphs, permutations, parameters)."""


class ParseError(InputError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateEdge(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


class InvalidPermutation(InputError):
    pass


class NegativeEpsilon(InputError):
    pass


class WrongComponentCount(InputError):
    pass


class BadR(InputError):
    pass


class InfeasibleEdgeCount(InputError):
    pass


class StepTooLarge(InputError):
    pass


class NumericalError(SpecmixError):
    """Failure of a numerical routine."""


class NoConvergence(NumericalError):
    pass


class ZeroPolynomial(NumericalError):
    pass


class InternalInconsistency(NumericalError):
    pass


class NonIntegerCoefficient(InternalInconsistency):
    pass
