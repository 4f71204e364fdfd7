"""Exception hierarchy shared by every module."""


class CombPfaffError(Exception):
    """Base class for all library errors."""


class DivisionByZero(CombPfaffError, ZeroDivisionError):
    pass


class NotSquare(CombPfaffError, ValueError):
    pass


class MatrixTooLarge(CombPfaffError, ValueError):
    pass


class Singular(CombPfaffError, ArithmeticError):
    pass


class NonUnitConstantTerm(CombPfaffError, ArithmeticError):
    pass


class UnknownVertex(CombPfaffError, KeyError):
    pass


class NotAcyclic(CombPfaffError, ValueError):
    pass


class IndexOutOfFamily(CombPfaffError, KeyError):
    pass


class NotBoundaryVertex(CombPfaffError, ValueError):
    pass


class OverlappingTuples(CombPfaffError, ValueError):
    pass


class SourceSinkMismatch(CombPfaffError, ValueError):
    pass


class EnumerationTooLarge(CombPfaffError, RuntimeError):
    pass


class ParseError(CombPfaffError, ValueError):
    pass


class ValidationError(CombPfaffError, ValueError):
    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class WrongGraphKind(CombPfaffError, TypeError):
    pass
