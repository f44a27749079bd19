"""Exception hierarchy shared by all fockops modules."""


class FockopsError(Exception):
    """Base class for all fockops-specific failures."""


class NonFiniteValue(FockopsError):
    """A weight function or one of its derivatives evaluated to NaN/inf."""


class TailNotConvergent(FockopsError):
    """The moment integrand does not decay; no usable tail split point exists."""


class QuadratureBudgetExceeded(FockopsError):
    """Adaptive quadrature hit its evaluation cap before reaching the target."""


class TruncationBudgetExceeded(FockopsError):
    """A kernel series could not be truncated within the term budget."""


class DegreeOverflow(FockopsError):
    """A polynomial operation produced terms above the configured max degree."""


class IndexOutOfRange(FockopsError):
    """A required moment index exceeds the available table."""


class DimensionMismatch(FockopsError):
    """Vectors/matrices with incompatible complex dimensions."""


class SingularMatrix(FockopsError):
    """The linear part of a symbol map is not invertible where required."""


class CrossCheckFailure(FockopsError):
    """A randomized criteria/matrix cross-check found a disagreement."""
