"""Exception types for the evaluation package."""


class MethodEvalError(Exception):
    """Base class for evaluation errors."""


class TooFewRows(MethodEvalError):
    """Fewer rows than folds requested."""


class SingleClassDataset(MethodEvalError):
    """Both classes are required for stratified evaluation."""


class ZeroBase(MethodEvalError):
    """Improvement percentage needs a positive base score."""


class DatasetFormatError(MethodEvalError):
    """The input CSV does not match the canonical dataset format."""
