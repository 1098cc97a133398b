"""Exception hierarchy. Every error carries a stable machine code used by the CLI."""


class GentorError(Exception):
    code = "E_INTERNAL"


class ParseError(GentorError, ValueError):
    code = "E_PARSE"


class BadOrderError(ParseError):
    code = "E_BAD_ORDER"


class TooManyFactorsError(ParseError):
    code = "E_TOO_MANY_FACTORS"


class UnknownGeneratorError(ParseError):
    code = "E_UNKNOWN_GENERATOR"


class TrivialInputError(GentorError, ValueError):
    code = "E_TRIVIAL_INPUT"


class GroupMismatchError(GentorError, ValueError):
    code = "E_GROUP_MISMATCH"


class NotVerifiedError(GentorError):
    code = "E_NOT_VERIFIED"


class NotConjugateIntoFactorError(GentorError):
    code = "E_NOT_CONJUGATE_INTO_FACTOR"


class TheoremViolationError(NotConjugateIntoFactorError):
    code = "E_THEOREM_VIOLATION"


class DefectViolationError(GentorError):
    """A configured defect bound was contradicted by an exact computation."""

    code = "E_DEFECT_VIOLATION"

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PreconditionError(GentorError, ValueError):
    code = "E_PRECONDITION"


class BadParamError(GentorError, ValueError):
    code = "E_BAD_PARAM"


class NoPeripheralError(GentorError, ValueError):
    code = "E_NO_PERIPHERAL"


class BadSlopeError(GentorError, ValueError):
    code = "E_BAD_SLOPE"


class NotKnotLikeError(GentorError, ValueError):
    code = "E_NOT_KNOT_LIKE"


class BadWordError(GentorError, ValueError):
    code = "E_BAD_WORD"


class InternalError(GentorError, AssertionError):
    code = "E_INTERNAL"
