import numpy as np

from .. import base


__all__ = ['PredictionStack']


class PredictionStack:
    """Aligned network predictions of one frame.

    Every augmentation layer must already have been mapped back into the reference frame.

    Parameters:
        seg: Foreground probabilities, either ``(H, W)`` or ``(n_aug, H, W)``. In the latter case
            they are averaged over the augmentations.
        centroid_offsets: ``(n_aug, H, W, 2)`` offsets from each pixel to the centroid of its
            cell, in pixels, ordered ``(dx, dy)``.
        motion_offsets: ``(n_aug, H, W, 2)`` offsets from each pixel to the position of its cell
            in the previous frame.
        labels: ``(H, W)`` instance map, 0 being the background.

    """

    def __init__(self, seg, centroid_offsets, motion_offsets, labels):

        seg = np.asarray(seg, dtype=float)
        if seg.ndim == 3:
            seg = seg.mean(axis=0)
        labels = np.asarray(labels)
        centroid_offsets = np.asarray(centroid_offsets, dtype=float)
        motion_offsets = np.asarray(motion_offsets, dtype=float)

        if labels.ndim != 2 or seg.shape != labels.shape:
            raise base.DomainError(
                f'seg {seg.shape} and labels {labels.shape} must share the same H x W shape'
            )
        if not np.issubdtype(labels.dtype, np.integer):
            raise base.DomainError('labels must be integers')
        for name, offsets in (('centroid', centroid_offsets), ('motion', motion_offsets)):
            if offsets.ndim != 4 or offsets.shape[1:] != (*labels.shape, 2):
                raise base.DomainError(
                    f'{name} offsets must have shape (n_aug, {labels.shape[0]}, '
                    f'{labels.shape[1]}, 2), got {offsets.shape}'
                )
        if centroid_offsets.shape[0] != motion_offsets.shape[0]:
            raise base.DomainError('both offset heads need the same number of augmentations')
        if ((seg < 0) | (seg > 1)).any():
            raise base.DomainError('seg values must lie in [0, 1]')

        self.seg = seg
        self.centroid_offsets = centroid_offsets
        self.motion_offsets = motion_offsets
        self.labels = labels

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def n_aug(self) -> int:
        return self.centroid_offsets.shape[0]

    def label_ids(self):
        """Sorted foreground labels."""
        ids = np.unique(self.labels)
        return [int(j) for j in ids if j > 0]

    def __repr__(self):
        return (f'PredictionStack(height={self.height}, width={self.width}, '
                f'n_aug={self.n_aug}, n_labels={len(self.label_ids())})')
