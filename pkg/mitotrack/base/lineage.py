import collections
import typing

from . import errors


__all__ = ['INTERPOLATED', 'LineageTree', 'Point', 'Track']


# det_id of positions filled in by interpolation
INTERPOLATED = -1


Point = collections.namedtuple('Point', 'frame det_id x y')


class Track(collections.namedtuple('Track', 'track_id begin end parent points')):
    """The trajectory of one cell between its birth and its death or division.

    Parameters:
        track_id: Positive identifier.
        begin: First frame.
        end: Last frame.
        parent: Identifier of the mother track, 0 when there is none.
        points: One `Point` per frame from `begin` to `end`.

    """

    def __new__(cls, track_id: int, begin: int, end: int, parent: int,
                points: typing.Iterable[Point]):
        points = tuple(Point(int(p[0]), int(p[1]), float(p[2]), float(p[3])) for p in points)
        if track_id < 1:
            raise errors.DomainError(f'track ids must be positive, got {track_id}')
        if end < begin:
            raise errors.DomainError(f'track {track_id} ends at {end} before beginning at {begin}')
        if [p.frame for p in points] != list(range(begin, end + 1)):
            raise errors.DomainError(f'track {track_id} needs one point per frame')
        return super().__new__(cls, int(track_id), int(begin), int(end), int(parent), points)

    @property
    def length(self) -> int:
        return self.end - self.begin + 1

    @property
    def n_detections(self) -> int:
        return sum(p.det_id != INTERPOLATED for p in self.points)

    def at(self, frame: int) -> Point:
        return self.points[frame - self.begin]


class LineageTree:
    """A forest of tracks linked by divisions.

    Example:

        >>> from mitotrack import base

        >>> tree = base.LineageTree([
        ...     base.Track(1, 0, 1, 0, [(0, 0, 5., 5.), (1, 0, 5., 5.)]),
        ...     base.Track(2, 2, 2, 1, [(2, 0, 4., 5.)]),
        ...     base.Track(3, 2, 2, 1, [(2, 1, 6., 5.)])
        ... ])
        >>> tree.divisions()
        [(1, 2, 3)]
        >>> tree.check()
        >>> print(tree.res_track())
        1 0 1 0
        2 2 2 1
        3 2 2 1

    """

    def __init__(self, tracks: typing.Iterable[Track] = ()):
        self.tracks = sorted(tracks, key=lambda t: t.track_id)
        self._by_id = {t.track_id: t for t in self.tracks}
        if len(self._by_id) != len(self.tracks):
            raise errors.DomainError('track ids must be unique')
        for t in self.tracks:
            if t.parent and t.parent not in self._by_id:
                raise errors.DomainError(f'track {t.track_id} has an unknown parent {t.parent}')

        self._children: typing.Dict[int, typing.List[int]] = collections.defaultdict(list)
        for t in self.tracks:
            if t.parent:
                self._children[t.parent].append(t.track_id)

        self._frames: typing.Dict[int, typing.Dict[int, Point]] = collections.defaultdict(dict)
        for t in self.tracks:
            for p in t.points:
                self._frames[p.frame][t.track_id] = p

    def __len__(self):
        return len(self.tracks)

    def __iter__(self):
        return iter(self.tracks)

    def __getitem__(self, track_id: int) -> Track:
        return self._by_id[track_id]

    @property
    def frames(self) -> typing.List[int]:
        return sorted(self._frames)

    def children(self, track_id: int) -> typing.List[int]:
        return list(self._children.get(track_id, []))

    def points_at(self, frame: int) -> typing.Dict[int, Point]:
        """Positions of the tracks alive at a frame, by track id."""
        return dict(self._frames.get(frame, {}))

    def divisions(self) -> typing.List[typing.Tuple[int, int, int]]:
        """``(parent, daughter, daughter)`` triplets."""
        return [
            (parent, *sorted(kids))
            for parent, kids in sorted(self._children.items())
            if len(kids) == 2
        ]

    def cycle_lengths(self) -> typing.List[int]:
        """Lengths of the tracks that both start and end with a division."""
        dividing = {parent for parent, *_ in self.divisions()}
        return [t.length for t in self.tracks if t.parent and t.track_id in dividing]

    def check(self, min_track_len: int = 0):
        """Raises a `DomainError` if the tree breaks one of its invariants."""
        for parent, kids in self._children.items():
            if len(kids) != 2:
                raise errors.DomainError(f'track {parent} has {len(kids)} children instead of 2')
            for kid in kids:
                if self._by_id[kid].begin != self._by_id[parent].end + 1:
                    raise errors.DomainError(
                        f'track {kid} begins at {self._by_id[kid].begin} but its parent '
                        f'{parent} ends at {self._by_id[parent].end}'
                    )
        for t in self.tracks:
            if t.track_id not in self._children and t.n_detections < min_track_len:
                raise errors.DomainError(
                    f'track {t.track_id} has {t.n_detections} detections, '
                    f'less than {min_track_len}'
                )

    def res_track(self) -> str:
        """Tracks in the ``label begin end parent`` text format."""
        return '\n'.join(f'{t.track_id} {t.begin} {t.end} {t.parent}' for t in self.tracks)

    def relabel(self, mapping: typing.Dict[int, int]) -> 'LineageTree':
        """Renames the tracks."""
        return LineageTree(
            t._replace(track_id=mapping[t.track_id], parent=mapping.get(t.parent, 0))
            for t in self.tracks
        )

    def __repr__(self):
        return f'LineageTree(tracks={len(self.tracks)}, divisions={len(self.divisions())})'
