"""Exceptions raised throughout mitotrack.

Every error is a `ValueError` so that callers who only care about bad input can keep catching
the builtin.

"""

__all__ = [
    'BadTensorHeader',
    'DegenerateCovariance',
    'DegenerateWeights',
    'DomainError',
    'EmptyGroundTruth',
    'EmptyMixture',
    'FrameOrder',
    'Infeasible',
    'InsufficientAugmentations',
    'InvalidConfig',
    'MalformedRow',
    'MitotrackError',
    'UnknownLabel'
]


class MitotrackError(ValueError):
    """Base class of all the errors raised by mitotrack."""


class DomainError(MitotrackError):
    """A numeric argument lies outside of the function's domain."""


class InsufficientAugmentations(MitotrackError):
    """Sample moments need at least two augmentations."""


class EmptyMixture(MitotrackError):
    """A Gaussian mixture without components cannot be merged."""


class DegenerateWeights(MitotrackError):
    """The mixture weights sum to zero."""


class UnknownLabel(MitotrackError):
    """The requested label does not occur in the label map."""


class EmptyGroundTruth(MitotrackError):
    """No labelled cell was found."""


class DegenerateCovariance(MitotrackError):
    """A covariance matrix is not positive (semi-)definite."""


class Infeasible(MitotrackError):
    """The assignment problem has no solution with a finite cost."""


class FrameOrder(MitotrackError):
    """Detections were fed to the tracker out of order."""


class BadTensorHeader(MitotrackError):
    """A tensor file does not match its declared layout."""


class MalformedRow(MitotrackError):
    """A row of a CSV file could not be parsed."""

    def __init__(self, line: int, reason: str):
        super().__init__(f'line {line}: {reason}')
        self.line = line


class InvalidConfig(MitotrackError):
    """A configuration holds unknown keys or out of range values."""
