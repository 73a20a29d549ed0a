import collections
import functools
import typing

import mmh3

from . import errors
from .gaussian import SpatialGaussian


__all__ = ['BernoulliComponent', 'extend_digest', 'MISSED', 'origin_digest']


# Placeholder stored in an assignment history when the object had no detection
MISSED = -1


def origin_digest(birth_frame: int, parent_key: typing.Optional[typing.Tuple[int, int]]) -> int:
    """Digest of how an object appeared: a birth, or a division of the given mother."""
    return mmh3.hash128(repr((int(birth_frame), parent_key)))


def extend_digest(digest: int, frame: int, det_id: int) -> int:
    """Digest of a history extended by one entry."""
    return mmh3.hash128(f'{digest} {int(frame)} {int(det_id)}')


class BernoulliComponent(collections.namedtuple(
        'BernoulliComponent',
        'object_id existence position age birth_frame parent_id history kinematics parent_key '
        'digest')):
    """A potential object: an existence probability together with a position density.

    Instances are immutable; the filter derives new components with `_replace`, and with
    `extend` whenever the history grows.

    Parameters:
        object_id: Identifier, unique within the lineage of a hypothesis.
        existence: Probability that the object exists, in (0, 1].
        position: Position density.
        age: Number of frames since the division that created the object, `None` when unknown.
        birth_frame: Frame of the first detection of the object.
        parent_id: Identifier of the mother cell, only set for objects created by a division.
        history: Tuple of ``(frame, det_id)`` pairs, ``det_id`` being `MISSED` for frames where
            the object went undetected.
        kinematics: Optional constant-velocity Kalman state ``(x, P)``, only used by the Kalman
            motion model.
        parent_key: `key` of the mother cell, only set for objects created by a division.
        digest: 128 bit digest of the appearance and of the history, computed when omitted.

    Example:

        >>> from mitotrack import base

        >>> c = base.BernoulliComponent(
        ...     object_id=1,
        ...     existence=.9,
        ...     position=base.SpatialGaussian.isotropic((5, 5), 1),
        ...     birth_frame=2,
        ...     history=((2, 0),)
        ... )
        >>> c.age is None, c.is_daughter, c.last_frame
        (True, False, 2)

        >>> d = c.extend(3, 4, existence=1.)
        >>> d.history, d.existence
        (((2, 0), (3, 4)), 1.0)
        >>> d.digest == c._replace(history=d.history, digest=None).with_digest().digest
        True

    """

    def __new__(cls, object_id: int, existence: float, position: SpatialGaussian,
                age: typing.Optional[int] = None, birth_frame: int = 0,
                parent_id: typing.Optional[int] = None,
                history: typing.Tuple[typing.Tuple[int, int], ...] = (),
                kinematics=None,
                parent_key: typing.Optional[typing.Tuple[int, int]] = None,
                digest: typing.Optional[int] = None):

        if not 0. < existence <= 1.:
            raise errors.DomainError(f'existence must lie in (0, 1], got {existence}')
        if age is not None and age < 0:
            raise errors.DomainError(f'age must be non-negative, got {age}')

        history = tuple(history)
        if parent_key is not None:
            parent_key = tuple(int(k) for k in parent_key)

        c = super().__new__(
            cls, object_id, float(existence), position, age, birth_frame, parent_id,
            history, kinematics, parent_key, digest
        )
        return c if digest is not None else c.with_digest()

    def with_digest(self) -> 'BernoulliComponent':
        """The component with its digest recomputed from scratch."""
        digest = functools.reduce(
            lambda d, entry: extend_digest(d, *entry),
            self.history,
            origin_digest(self.birth_frame, self.parent_key)
        )
        return self._replace(digest=digest)

    def extend(self, frame: int, det_id: int, **changes) -> 'BernoulliComponent':
        """The component with one more history entry, other fields being replaced as given."""
        return self._replace(
            history=self.history + ((frame, det_id),),
            digest=extend_digest(self.digest, frame, det_id),
            **changes
        )

    @property
    def is_daughter(self) -> bool:
        return self.parent_id is not None

    @property
    def last_frame(self) -> int:
        return self.history[-1][0] if self.history else self.birth_frame

    @property
    def n_detections(self) -> int:
        return sum(det_id != MISSED for _, det_id in self.history)

    @property
    def key(self) -> typing.Tuple[int, int]:
        """Identifies the component through its first detection, independently of its id."""
        return self.history[0] if self.history else (self.birth_frame, MISSED)
