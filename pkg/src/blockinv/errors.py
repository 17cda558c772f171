"""Exception hierarchy.

Every error carries enough context (block indices, keys) for the CLI to turn it
into a machine-readable error object.
"""


class BlockInvError(Exception):
    """Base class for all library errors."""

    code = "error"

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        out = {"code": self.code, "message": self.message}
        out.update({k: v for k, v in self.context.items() if v is not None})
        return out


class DimensionMismatch(BlockInvError, ValueError):
    code = "dimension_mismatch"


class NotInvertible(BlockInvError, ZeroDivisionError):
    code = "not_invertible"


class IndexOutOfRange(BlockInvError, IndexError):
    code = "index_out_of_range"


class DegenerateResult(BlockInvError, ValueError):
    code = "degenerate_result"


class CapExceeded(BlockInvError, ValueError):
    code = "cap_exceeded"


class InvalidSplit(BlockInvError, ValueError):
    code = "invalid_split"


class StructureError(BlockInvError, ValueError):
    """Input violates a structural requirement (triangular, Hessenberg)."""

    code = "structure_error"


class TriangularityError(StructureError):
    code = "not_block_triangular"


class HessenbergError(StructureError):
    code = "not_block_hessenberg"


class ParseError(BlockInvError, ValueError):
    code = "parse_error"


class ShapeError(ParseError):
    code = "shape_error"
