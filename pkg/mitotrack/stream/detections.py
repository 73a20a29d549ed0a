"""Reading and writing of ``detections.csv`` files.

One row per detection, the header being mandatory. Covariances are in squared pixels and floats
are written with full precision, so that a file read back yields the same detections.

"""
import csv
import typing

from .. import base
from . import utils


__all__ = ['DETECTION_FIELDS', 'iter_detections', 'read_detections', 'write_detections']


DETECTION_FIELDS = (
    'frame', 'det_id',
    'cx', 'cy', 'cxx', 'cxy', 'cyy',
    'mx', 'my', 'mxx', 'mxy', 'myy',
    'clutter', 'area'
)


def _parse(row: typing.List[str]) -> base.Detection:
    frame, det_id = int(row[0]), int(row[1])
    cx, cy, cxx, cxy, cyy, mx, my, mxx, mxy, myy, clutter, area = map(float, row[2:])
    return base.Detection(
        frame=frame,
        det_id=det_id,
        centroid=base.SpatialGaussian((cx, cy), ((cxx, cxy), (cxy, cyy))),
        motion_warped=base.SpatialGaussian((mx, my), ((mxx, mxy), (mxy, myy))),
        clutter_prob=clutter,
        area=area
    )


def iter_detections(filepath_or_buffer) -> typing.Iterator[base.Detection]:
    """Iterates over the detections of a CSV file.

    Parameters:
        filepath_or_buffer: Either a path, possibly ending with ``.gz``, or an opened text buffer.

    Raises:
        MalformedRow: When the header or a row cannot be parsed. The error carries the line
            number.

    Example:

        >>> import io
        >>> from mitotrack import stream

        >>> buffer = io.StringIO(
        ...     'frame,det_id,cx,cy,cxx,cxy,cyy,mx,my,mxx,mxy,myy,clutter,area\\n'
        ...     '0,0,10.5,20.0,1.0,0.0,1.0,10.0,19.0,2.0,0.5,2.0,0.1,78.5\\n'
        ... )
        >>> for det in stream.iter_detections(buffer):
        ...     print(det.frame, det.det_id, det.centroid.mean, det.motion)
        0 0 (10.5, 20.0) (0.5, 1.0)

    """

    opened = not hasattr(filepath_or_buffer, 'read')
    f = utils.open_filepath(filepath_or_buffer) if opened else filepath_or_buffer

    try:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != DETECTION_FIELDS:
            raise base.MalformedRow(1, f'expected the header {",".join(DETECTION_FIELDS)}')

        for row in reader:
            if not row:
                continue
            if len(row) != len(DETECTION_FIELDS):
                raise base.MalformedRow(
                    reader.line_num,
                    f'expected {len(DETECTION_FIELDS)} fields, got {len(row)}'
                )
            try:
                yield _parse(row)
            except ValueError as e:
                raise base.MalformedRow(reader.line_num, str(e)) from e
    finally:
        if opened:
            f.close()


def read_detections(filepath_or_buffer) -> typing.List[base.Detection]:
    """Reads a CSV file, checking that the ``(frame, det_id)`` pairs are unique."""
    dets = list(iter_detections(filepath_or_buffer))
    seen = set()
    for line, det in enumerate(dets, start=2):
        key = (det.frame, det.det_id)
        if key in seen:
            raise base.MalformedRow(line, f'duplicate det_id {det.det_id} in frame {det.frame}')
        seen.add(key)
    return dets


def write_detections(filepath_or_buffer, detections: typing.Iterable[base.Detection]):
    """Writes detections, sorted by frame then by identifier."""

    opened = not hasattr(filepath_or_buffer, 'write')
    f = utils.open_filepath(filepath_or_buffer, 'w') if opened else filepath_or_buffer

    try:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(DETECTION_FIELDS)
        for d in sorted(detections, key=lambda d: (d.frame, d.det_id)):
            (cxx, cxy), (_, cyy) = d.centroid.cov
            (mxx, mxy), (_, myy) = d.motion_warped.cov
            writer.writerow([
                d.frame, d.det_id,
                *map(utils.fmt_float, (*d.centroid.mean, cxx, cxy, cyy)),
                *map(utils.fmt_float, (*d.motion_warped.mean, mxx, mxy, myy)),
                utils.fmt_float(d.clutter_prob), utils.fmt_float(d.area)
            ])
    finally:
        if opened:
            f.close()
