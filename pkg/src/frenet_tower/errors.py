"""Exception hierarchy with stable machine-readable error codes."""

from __future__ import annotations


class ToolError(Exception):
    """Base class for all library errors; carries a stable ``code`` string."""

    code = "ERROR"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail

    def to_json_dict(self) -> dict:
        return {"error": self.code, "message": str(self), "detail": self.detail}


class InvalidArgumentError(ToolError):
    code = "INVALID_ARGUMENT"


class FrameCollapseError(ToolError):
    """Frame vectors became (nearly) linearly dependent."""

    code = "FRAME_COLLAPSE"


class SigmaUndefinedError(ToolError):
    """Geodesic curvature requested on a degenerate sample."""

    code = "SIGMA_UNDEFINED"


class AxisUndefinedError(ToolError):
    """Axis requested where the Darboux vector vanishes."""

    code = "AXIS_UNDEFINED"


class ProfileEvalError(ToolError):
    """Curvature/torsion profile failed to evaluate; detail carries the s location."""

    code = "PROFILE_EVAL_ERROR"


class InsufficientSamplesError(ToolError):
    code = "INSUFFICIENT_SAMPLES"


class NotRegularError(ToolError):
    """Input points do not describe a regular curve (repeated or zero-length)."""

    code = "NOT_REGULAR"


class LevelUnavailableError(ToolError):
    """Principal-direction recursion cannot produce the requested level."""

    code = "LEVEL_UNAVAILABLE"


class UnclassifiableError(ToolError):
    """Too little usable data to run the classification procedure."""

    code = "UNCLASSIFIABLE"


class ExpressionError(ToolError):
    """Base for profile-expression language errors; carries a column number."""

    code = "SYNTAX_ERROR"

    def __init__(self, message: str, column: int | None = None, **detail):
        if column is not None:
            detail["column"] = column
        super().__init__(message, **detail)
        self.column = column


class SyntaxErrorWithColumn(ExpressionError):
    code = "SYNTAX_ERROR"


class UnknownIdentifierError(ExpressionError):
    code = "UNKNOWN_IDENTIFIER"


class ArityError(ExpressionError):
    code = "ARITY_MISMATCH"
