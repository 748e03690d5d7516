"""Exception hierarchy shared across the package.

Two broad families matter to callers: problems with the input data
(DataError) and problems arising during numerical computation
(NumericalError).  The command line maps these to distinct exit codes.
"""


class JointNmfError(Exception):
    """Base class for all package errors."""


class DataError(JointNmfError):
    """Invalid, inconsistent, or degenerate input data."""


class NumericalError(JointNmfError):
    """Numerical computation failed or did not converge."""


class ShapeMismatch(DataError):
    """Operands have incompatible dimensions."""


class NotSymmetric(DataError):
    """A matrix required to be symmetric is not."""


class ZeroSimilarity(DataError):
    """Similarity matrix is identically zero where a nonzero one is required."""


class IndexOutOfRange(DataError):
    """Vertex or item index outside the declared range."""


class ZeroDegree(DataError):
    """A vertex or edge with zero degree where positive degree is required."""


class EmptyGraph(DataError):
    """Graph or hypergraph with no usable vertices or edges."""


class LabelMissing(DataError):
    """A labeling does not cover every item it must cover."""


class EmptyCorpus(DataError):
    """No terms or no documents survive, or none were given."""


class ZeroColumn(DataError):
    """A column with zero norm where a unit-normalizable column is required."""


class UniverseMismatch(DataError):
    """Two labelings do not describe the same set of items."""


class DegenerateLabels(DataError):
    """Binary labels are all positive or all negative."""


class ZeroQuery(DataError):
    """Query vector is identically zero."""


class VocabMismatch(DataError):
    """Vocabulary does not line up with the matrix it describes."""


class NonConvergence(NumericalError):
    """An iterative solver exhausted its iteration budget."""


class SingularSystem(NumericalError):
    """A linear system was singular even after regularization."""
