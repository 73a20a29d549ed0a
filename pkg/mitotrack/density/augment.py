import collections
import typing

import numpy as np

from .. import base


__all__ = ['ShiftTransform', 'shift_transform_set']


class ShiftTransform(collections.namedtuple('ShiftTransform', 'base_index dx dy')):
    """A translation of the previous frame, combined with one of the base augmentations.

    The current frame is left untouched. Predicted motion offsets of a shifted run point to
    shifted positions, which `align` undoes.

    """

    @property
    def is_identity(self) -> bool:
        return self.dx == 0 and self.dy == 0

    def inverse(self) -> 'ShiftTransform':
        return ShiftTransform(self.base_index, -self.dx, -self.dy)

    def compose(self, other: 'ShiftTransform') -> 'ShiftTransform':
        return ShiftTransform(self.base_index, self.dx + other.dx, self.dy + other.dy)

    def apply(self, offsets):
        """Translates motion offsets ``(..., 2)`` by the shift."""
        return np.asarray(offsets, dtype=float) + (self.dx, self.dy)

    def align(self, offsets):
        """Maps motion offsets predicted under this shift back to the reference frame."""
        return self.inverse().apply(offsets)


def shift_transform_set(base_count: int, radius: float = 1.) -> typing.List[ShiftTransform]:
    """Shifts in the four axis directions, plus no shift, for every base augmentation.

    Parameters:
        base_count: Number of base augmentations (flips, rotations, ...).
        radius: Shift magnitude in pixels, usually the average cell radius of the sequence.

    Example:

        >>> from mitotrack import density

        >>> for t in density.shift_transform_set(1, radius=4.):
        ...     print(t)
        ShiftTransform(base_index=0, dx=0.0, dy=0.0)
        ShiftTransform(base_index=0, dx=4.0, dy=0.0)
        ShiftTransform(base_index=0, dx=-4.0, dy=0.0)
        ShiftTransform(base_index=0, dx=0.0, dy=4.0)
        ShiftTransform(base_index=0, dx=0.0, dy=-4.0)

    """
    if int(base_count) != base_count or base_count < 1:
        raise base.DomainError(f'base_count must be a positive integer, got {base_count}')

    r = float(radius)
    directions = ((0., 0.), (r, 0.), (-r, 0.), (0., r), (0., -r))
    return [
        ShiftTransform(b, dx, dy)
        for b in range(int(base_count))
        for dx, dy in directions
    ]
