"""Exception hierarchy shared by every module.

Each error carries a stable ``name`` so the CLI can print it on stderr.
"""


class AlgebraError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    @property
    def name(self) -> str:
        return type(self).__name__


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class ModulusMismatch(AlgebraError):
    pass


class CharacteristicTooSmall(AlgebraError):
    def __init__(self, p: int, bound: int):
        super().__init__(f"characteristic {p} must exceed {bound}")
        self.p = p
        self.bound = bound


class NotPrime(AlgebraError):
    pass


class ZeroPolynomial(AlgebraError):
    pass


class DuplicateNode(AlgebraError):
    pass


class NotMonic(AlgebraError):
    pass


class InconsistentSeries(AlgebraError):
    pass


class NotDivisible(AlgebraError):
    pass


class NotAPerfectPower(AlgebraError):
    pass


class DegreeNotDivisible(AlgebraError):
    pass


class SharedRoot(AlgebraError):
    pass


class SingularMatrix(AlgebraError):
    pass


class NotCoprime(AlgebraError):
    pass


class DegreeTooHigh(AlgebraError):
    pass


class DegenerateParameterization(AlgebraError):
    pass


class OutputDegreeOverflow(AlgebraError):
    pass


class MalformedCircuit(AlgebraError):
    pass


class DivisionByZeroAtGate(AlgebraError):
    def __init__(self, gate: int):
        super().__init__(f"division by zero at gate {gate}")
        self.gate = gate


class CapExceeded(AlgebraError):
    pass


class NotAPolynomial(AlgebraError):
    pass


class NoNonzeroPoint(AlgebraError):
    pass


class ZeroCircuit(AlgebraError):
    pass


class FieldTooSmall(AlgebraError):
    pass


class ParseError(ValueError):
    """Malformed textual input (CLI exit code 2)."""
