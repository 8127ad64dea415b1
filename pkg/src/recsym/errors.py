"""Exception types shared across the package."""


class RecsymError(Exception):
    """Base class for every error raised by this package."""


class BackendMismatch(RecsymError):
    """Operands come from different scalar backends (exact vs float)."""


class SqrtNotExact(RecsymError):
    """The exact backend cannot exhibit a Gaussian-rational square root."""


class SuperluminalVelocity(RecsymError):
    """A velocity with |v| >= 1 (in units of c) was supplied."""


class NotAUnitBoost(RecsymError):
    """Expected a real 4-vector with positive scalar part and unit quadratic form."""


class VectorResidueNonzero(RecsymError):
    """A conjugate product left a nonzero vector part.

    Algebraically impossible for a correct implementation, so this always
    signals a bug rather than bad input.
    """


class ZeroMomentum(RecsymError):
    """A helicity spinor was requested for zero momentum."""


class DegenerateFrame(RecsymError):
    """Vector parts are collinear or zero, so {A, B, AxB} is not a basis."""


class UnknownIdentity(RecsymError):
    """The identity id is not registered with the checker."""


class UnknownProperty(RecsymError):
    """The search property id is not registered with the checker."""


class ExpectedWitnessMissing(RecsymError):
    """A search whose witness must exist exhausted its samples without one."""


class ExprError(RecsymError):
    """Base for expression-language errors; carries a source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ParseError(ExprError):
    """The source text does not match the expression grammar."""


class ArityError(ExprError):
    """A function was applied to the wrong number of arguments."""


class ExprTypeError(ExprError):
    """A function was applied to a value of the wrong kind."""


class UnboundVariable(ExprError):
    """A variable reference has no binding."""


class EvalError(ExprError):
    """An algebra error surfaced while evaluating a subexpression."""
