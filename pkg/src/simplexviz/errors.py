"""Exception types shared across the package."""


class SimplexVizError(Exception):
    """Base class for all errors raised by simplexviz."""


# geometry

class SumRuleViolation(SimplexVizError):
    """Shares do not sum to the expected total within tolerance."""


class NegativeShare(SimplexVizError):
    """A share or metric value is negative."""


class ZeroTotal(SimplexVizError):
    """Cannot rescale an all-zero vector."""


class UnsupportedDimension(SimplexVizError):
    """No embedding is defined for the requested vertex count."""


class DimensionMismatch(SimplexVizError):
    """Point and embedding dimensionality disagree."""


class OutsideSimplex(SimplexVizError):
    """A point lies outside the simplex hull."""


class InvalidStep(SimplexVizError):
    """Gridline step must lie strictly between 0 and 1."""


# model

class UnknownSpec(SimplexVizError):
    """No built-in aggregation spec with that name."""


class MissingMetric(SimplexVizError):
    """A required source metric is absent."""


# render / service

class SnapNotFound(SimplexVizError):
    """The requested snap id is not in the dataset."""


class InvalidView(SimplexVizError):
    """The (dataset, spec, axes) combination cannot be drawn."""


# ingest

class ParseError(SimplexVizError):
    """A dataset file could not be parsed; message locates the offence."""


class SchemaError(SimplexVizError):
    """A dataset file is structurally valid but misses required fields."""


class InconsistentMetrics(SimplexVizError):
    """A snapshot's metric list deviates from the dataset's."""


class InvalidScenario(SimplexVizError):
    """Scenario spec is unknown or internally inconsistent."""
