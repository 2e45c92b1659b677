"""Exception hierarchy shared by all modules."""


class PrymError(Exception):
    """Base class for every error raised by prymcert."""


class LatticeError(PrymError, ValueError):
    """Dimension mismatch, degenerate form or malformed Gram matrix."""


class SurfaceError(PrymError, ValueError):
    """Unsupported surface or unrealizable invariant."""


class PositivityError(PrymError, ValueError):
    """A class fails a positivity precondition (effective, ample, ...)."""


class ConsistencyError(PrymError, RuntimeError):
    """Two independent routes to the same answer disagree."""


class HomologyError(PrymError, ValueError):
    """Bad homology model input or a cycle outside the required sublattice."""
