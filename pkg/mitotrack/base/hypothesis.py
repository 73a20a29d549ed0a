import collections
import math
import typing

import mmh3

from . import errors
from .component import BernoulliComponent


__all__ = ['Hypothesis']


class Hypothesis(collections.namedtuple('Hypothesis', 'weight components archive next_id')):
    """A weighted set of Bernoulli components.

    The weight is the accumulated cost in nats, hence the most likely hypothesis is the one with
    the lowest weight.

    Parameters:
        weight: Accumulated negative log-likelihood.
        components: Alive components.
        archive: Terminated components, kept for lineage export.
        next_id: Next free object identifier.

    Example:

        >>> from mitotrack import base

        >>> h = base.Hypothesis()
        >>> h.weight, len(h.components), h.next_id
        (0.0, 0, 1)

    """

    def __new__(cls, weight: float = 0., components: typing.Iterable[BernoulliComponent] = (),
                archive: typing.Iterable[BernoulliComponent] = (), next_id: int = 1):

        if not math.isfinite(weight):
            raise errors.DomainError(f'hypothesis weight must be finite, got {weight}')

        components = tuple(components)
        archive = tuple(archive)

        ids = [c.object_id for c in components] + [c.object_id for c in archive]
        if len(ids) != len(set(ids)):
            raise errors.DomainError('object ids must be unique within a hypothesis')

        return super().__new__(cls, float(weight), components, archive, next_id)

    def signature(self) -> tuple:
        """Canonical description of the state, blind to weights and object ids.

        Two hypotheses with the same signature explain the detections in the same way: same
        births, same divisions, same histories.

        """
        archived = {c.object_id for c in self.archive}

        def describe(c):
            born = 'birth' if c.parent_key is None else 'division'
            return (born, c.birth_frame, c.history, c.parent_key, c.object_id in archived)

        return tuple(sorted(describe(c) for c in self.components + self.archive))

    def signature_key(self) -> int:
        """128 bit digest of the signature, used to detect duplicates cheaply.

        It combines the digests the components maintain along their histories, hence its cost
        does not depend on the length of the histories.

        """
        alive = sum(c.digest for c in self.components)
        archived = sum(c.digest for c in self.archive)
        return mmh3.hash128(f'{alive} {archived}')

    def __str__(self):
        return (f'Hypothesis(weight={self.weight:.4f}, alive={len(self.components)}, '
                f'archived={len(self.archive)})')

    def __repr__(self):
        return str(self)
