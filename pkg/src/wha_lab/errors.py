"""Exception hierarchy shared by all wha_lab modules."""


class WHAError(Exception):
    """Base class for every error raised by wha_lab."""


class InputError(WHAError):
    """Bad user input: malformed files, invalid parameters, broken axioms."""


class VerificationFailure(WHAError):
    """A checked identity does not hold on the given data."""


class InternalInconsistency(WHAError):
    """Two routes that must agree by theory disagree (implementation bug class)."""


# numerics
class NoSolution(WHAError):
    pass


class NilpotentInput(WHAError):
    pass


class NumericallyIndistinct(WHAError):
    pass


class NotIntegral(VerificationFailure):
    pass


class ConvergenceError(WHAError):
    pass


# core / builders
class NotInvertible(WHAError):
    pass


class NoAntipode(InputError):
    pass


class AntipodeNotUnique(InputError):
    pass


class InvalidGroupoid(InputError):
    pass


class InvalidParams(InputError):
    pass


class SizeLimitExceeded(InvalidParams):
    pass


class ParseError(InputError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class AxiomViolation(InputError):
    def __init__(self, axiom, witness=None):
        self.axiom = axiom
        self.witness = witness
        msg = f"axiom {axiom!r} fails"
        if witness is not None:
            msg += f" at basis tuple {witness}"
        super().__init__(msg)


# structural preconditions
class NotSemisimple(WHAError):
    pass


class NotConnected(WHAError):
    pass


class NotBiconnected(WHAError):
    pass


class DegenerateIntegral(WHAError):
    pass


class NotPivotal(VerificationFailure):
    pass


class NotPseudoUnitary(WHAError):
    pass


class Decomposable(WHAError):
    pass


class NotSemisimpleM(WHAError):
    pass


# theory-level disagreements
class EquivalenceViolated(InternalInconsistency):
    pass


class EquationViolated(InternalInconsistency):
    pass
