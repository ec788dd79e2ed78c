"""Exception hierarchy shared by all modules.

Every error raised on bad input derives from :class:`HomophilyError`, so the
command line can map any of them to a data error (exit status 1).
"""


class HomophilyError(ValueError):
    """Base class for all data errors raised by this package."""


# --- hypergraph -----------------------------------------------------------

class ValidationError(HomophilyError):
    pass


class SizeMismatchError(ValidationError):
    def __init__(self, edge, size, k):
        self.edge = tuple(edge)
        self.size = size
        self.k = k
        super().__init__(f"edge {self.edge} has size {size}, expected {k}")


class DuplicateMemberError(ValidationError):
    def __init__(self, edge, node):
        self.edge = tuple(edge)
        self.node = node
        super().__init__(f"node {node!r} appears more than once in edge {self.edge}")


class UnlabeledNodeError(ValidationError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node!r} has no class label")


class UnknownNodeError(HomophilyError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node!r} is not in the hypergraph")


class FocalLabelAbsentError(HomophilyError):
    def __init__(self, focal):
        self.focal = focal
        super().__init__(f"focal label {focal!r} does not occur in the labels")


# --- scores ---------------------------------------------------------------

class EmptyClassDegreeError(HomophilyError):
    pass


class EmptyClassEdgeSetError(HomophilyError):
    pass


class InsufficientNodesError(HomophilyError):
    pass


class AlphaOutOfRangeError(HomophilyError):
    pass


class ZeroBaselineError(HomophilyError):
    def __init__(self, t):
        self.t = t
        super().__init__(f"baseline score is zero at t={t}")


class FOutOfRangeError(HomophilyError):
    pass


class ProfileMismatchError(HomophilyError):
    """Two profiles disagree on k or class."""


# --- nullmodels -----------------------------------------------------------

class ParamOutOfRangeError(HomophilyError):
    pass


# --- certificates ---------------------------------------------------------

class InvalidKError(HomophilyError):
    pass


class NonpositiveBaselineError(HomophilyError):
    def __init__(self, cls, t):
        self.cls = cls
        self.t = t
        super().__init__(f"generalized baseline g_{t}({cls}) is not strictly positive")


class CertificateConstructionFailed(HomophilyError):
    """The closed-form dual failed its own checks (a bug or an invalid baseline)."""


class NoWitnessError(HomophilyError):
    """The constraint-removal construction did not produce positive slack."""


class ZeroWitnessCountError(HomophilyError):
    pass


# --- ingest ---------------------------------------------------------------

class ParseError(HomophilyError):
    def __init__(self, line_no, reason, path=None):
        self.line_no = line_no
        self.reason = reason
        self.path = path
        where = f"{path}:{line_no}" if path is not None else f"line {line_no}"
        super().__init__(f"{where}: {reason}")


class TOutOfRangeError(ParseError):
    pass


class NoEdgesOfSizeError(HomophilyError):
    def __init__(self, k):
        self.k = k
        super().__init__(f"no hyperedges of size {k}")


class TheoremViolationError(AssertionError):
    """A combinatorial impossibility was observed to fail. Always a bug."""
