import abc
import collections
import typing

from .. import base


__all__ = ['Metric', 'Metrics', 'NOT_APPLICABLE']


# Value of a metric that is undefined on the data it has seen
NOT_APPLICABLE = None


class Metric(abc.ABC):

    # Define the format specification used for string representation.
    _fmt = '.2%'

    @abc.abstractmethod
    def update(self, pred: base.LineageTree, gt: base.LineageTree) -> 'Metric':
        """Update the metric with one sequence."""

    @abc.abstractmethod
    def get(self) -> typing.Optional[float]:
        """Return the current value of the metric, or `NOT_APPLICABLE`."""

    @property
    def bigger_is_better(self) -> bool:
        return True

    @property
    def name(self) -> str:
        return self.__class__.__name__

    def __repr__(self):
        """Returns the class name along with the current value of the metric."""
        value = self.get()
        if value is NOT_APPLICABLE:
            return f'{self.name}: N/A'
        return f'{self.name}: {value:{self._fmt}}'


class Metrics(Metric, collections.UserList):
    """A container class for handling multiple metrics at once."""

    def __init__(self, metrics, str_sep=', '):
        super().__init__(metrics)
        self.str_sep = str_sep

    def update(self, pred, gt):
        for m in self:
            m.update(pred, gt)
        return self

    def get(self):
        return [m.get() for m in self]

    def to_dict(self) -> typing.Dict[str, typing.Optional[float]]:
        return {m.name: m.get() for m in self}

    def __repr__(self):
        return self.str_sep.join((str(m) for m in self))
