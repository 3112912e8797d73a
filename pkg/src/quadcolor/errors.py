"""Exception types shared across the package.

Every error raised on bad input derives from QuadcolorError so the CLI can
map them to exit code 3 with a category prefix.
"""


class QuadcolorError(Exception):
    """Base class; `category` feeds the CLI error line."""

    category = "error"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message


class MalformedRotation(QuadcolorError):
    category = "malformed-rotation"


class CuffMismatch(QuadcolorError):
    category = "cuff-mismatch"


class NotOrientableError(QuadcolorError):
    category = "not-orientable"


class NotSubgraph(QuadcolorError):
    category = "not-subgraph"


class NotACycle(QuadcolorError):
    category = "not-a-cycle"


class NotConnected(QuadcolorError):
    category = "not-connected"


class NotCellEmbedded(QuadcolorError):
    category = "not-cell-embedded"


class UnsupportedCut(QuadcolorError):
    category = "unsupported-cut"


class ImproperEdge(QuadcolorError):
    category = "improper-edge"


class Uncolored(QuadcolorError):
    category = "uncolored"


class NotQuadrangulation(QuadcolorError):
    category = "not-quadrangulation"


class NotDiskQuadrangulation(QuadcolorError):
    category = "not-disk-quadrangulation"


class NotCylinderQuadrangulation(QuadcolorError):
    category = "not-cylinder-quadrangulation"


class ImproperBoundary(QuadcolorError):
    category = "improper-boundary"


class ImproperPrecoloring(QuadcolorError):
    category = "improper-precoloring"


class NonzeroWinding(QuadcolorError):
    category = "nonzero-winding"


class NotACut(QuadcolorError):
    category = "not-a-cut"


class InconsistentFlow(QuadcolorError):
    category = "inconsistent-flow"


class NotCylinder(QuadcolorError):
    category = "not-cylinder"


class InfeasibleParameters(QuadcolorError):
    category = "infeasible-parameters"


class NotSeparating(QuadcolorError):
    category = "not-separating"


class PreconditionViolated(QuadcolorError):
    category = "precondition-violated"


class BadParameters(QuadcolorError):
    category = "bad-parameters"


class ParseError(QuadcolorError):
    category = "parse"

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class InternalError(QuadcolorError):
    """An invariant promised by the algorithms failed at runtime."""

    category = "internal"
