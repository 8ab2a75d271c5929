"""Exception types shared across the package."""


class DriftScopeError(Exception):
    """Base class for all domain errors raised by this package."""


class DatasetFormatError(DriftScopeError):
    """A dataset file could not be parsed (carries file and line context)."""


class DimensionMismatchError(DriftScopeError):
    """Vector length disagrees with the expected dimension."""


class EmptyDatasetError(DriftScopeError):
    """An operation that requires records was given none."""


class ClusteringError(DriftScopeError):
    """Invalid clustering parameters, e.g. k=0 or k above the distinct-point count."""


class ModelFileError(DriftScopeError):
    """A persisted baseline model is corrupt or internally inconsistent."""


class ModelVersionError(ModelFileError):
    """A persisted baseline model has an unsupported version tag."""


class DistributionError(DriftScopeError):
    """Histogram inputs violate probability-vector preconditions."""


class NoFeasibleKError(DriftScopeError):
    """No cluster count in the searched range meets the per-bin evidence floor."""


class MissingFieldError(DriftScopeError):
    """Records lack a field (timestamp, label, text) the operation requires."""


class ScenarioError(DriftScopeError):
    """A synthetic-drift scenario cannot be built from the given pool."""
