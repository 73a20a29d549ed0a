"""Reading and writing of lineages.

A lineage is stored in a directory holding two files. ``res_track.txt`` follows the Cell
Tracking Challenge convention, one ``label begin end parent`` line per track. ``tracks.csv``
holds the positions, with the columns ``frame,track_id,det_id,cx,cy`` and a ``det_id`` of -1 for
interpolated positions.

"""
import collections
import csv
import os
import typing

from .. import base
from . import utils


__all__ = [
    'read_lineage',
    'read_res_track',
    'read_tracks',
    'RES_TRACK',
    'TRACK_FIELDS',
    'TRACKS',
    'write_lineage',
    'write_res_track',
    'write_tracks'
]


TRACK_FIELDS = ('frame', 'track_id', 'det_id', 'cx', 'cy')
RES_TRACK = 'res_track.txt'
TRACKS = 'tracks.csv'


def write_res_track(path: str, tree: base.LineageTree):
    with open(path, 'w') as f:
        text = tree.res_track()
        f.write(text + '\n' if text else '')


def read_res_track(path: str) -> typing.List[typing.Tuple[int, int, int, int]]:
    """Returns the ``(label, begin, end, parent)`` rows."""
    rows = []
    with open(path) as f:
        for line, text in enumerate(f, start=1):
            if not text.strip():
                continue
            fields = text.split()
            if len(fields) != 4:
                raise base.MalformedRow(line, f'expected 4 fields, got {len(fields)}')
            try:
                rows.append(tuple(int(x) for x in fields))
            except ValueError as e:
                raise base.MalformedRow(line, str(e)) from e
    return rows


def write_tracks(path: str, tree: base.LineageTree):
    points = sorted(
        (p.frame, t.track_id, p.det_id, p.x, p.y)
        for t in tree
        for p in t.points
    )
    with utils.open_filepath(path, 'w') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(TRACK_FIELDS)
        for frame, track_id, det_id, x, y in points:
            writer.writerow([frame, track_id, det_id, utils.fmt_float(x), utils.fmt_float(y)])


def read_tracks(path: str) -> typing.Dict[int, typing.List[base.Point]]:
    """Returns the points of every track, sorted by frame."""
    points: typing.Dict[int, typing.List[base.Point]] = collections.defaultdict(list)
    with utils.open_filepath(path) as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != TRACK_FIELDS:
            raise base.MalformedRow(1, f'expected the header {",".join(TRACK_FIELDS)}')
        for row in reader:
            if not row:
                continue
            if len(row) != len(TRACK_FIELDS):
                raise base.MalformedRow(reader.line_num, f'expected 5 fields, got {len(row)}')
            try:
                frame, track_id, det_id = map(int, row[:3])
                x, y = map(float, row[3:])
            except ValueError as e:
                raise base.MalformedRow(reader.line_num, str(e)) from e
            points[track_id].append(base.Point(frame, det_id, x, y))
    return {track_id: sorted(pts) for track_id, pts in points.items()}


def write_lineage(directory: str, tree: base.LineageTree):
    """Writes ``res_track.txt`` and ``tracks.csv`` into a directory, creating it if needed."""
    os.makedirs(directory, exist_ok=True)
    write_res_track(os.path.join(directory, RES_TRACK), tree)
    write_tracks(os.path.join(directory, TRACKS), tree)


def read_lineage(directory: str) -> base.LineageTree:
    """Reads a lineage written by `write_lineage`.

    Example:

        >>> import tempfile
        >>> from mitotrack import base
        >>> from mitotrack import stream

        >>> tree = base.LineageTree([
        ...     base.Track(1, 0, 1, 0, [(0, 3, 5., 5.), (1, -1, 5.5, 5.)]),
        ...     base.Track(2, 2, 2, 1, [(2, 0, 4., 5.)]),
        ...     base.Track(3, 2, 2, 1, [(2, 1, 7., 5.)])
        ... ])
        >>> with tempfile.TemporaryDirectory() as directory:
        ...     stream.write_lineage(directory, tree)
        ...     back = stream.read_lineage(directory)
        >>> back.tracks == tree.tracks
        True

    """

    points = read_tracks(os.path.join(directory, TRACKS))
    tracks = []
    for line, (track_id, begin, end, parent) in enumerate(
            read_res_track(os.path.join(directory, RES_TRACK)), start=1):
        try:
            tracks.append(base.Track(track_id, begin, end, parent, points.pop(track_id, ())))
        except base.DomainError as e:
            raise base.MalformedRow(line, str(e)) from e
    if points:
        raise base.DomainError(f'{TRACKS} has positions of unknown tracks {sorted(points)}')
    return base.LineageTree(tracks)
