"""Reading and writing of ``.nft`` tensor files and of the manifests that index them.

A tensor file starts with a 4 byte magic, ``NFT1`` for float32 payloads and ``NFI1`` for int32
label maps, followed by the rank and the dimensions as little-endian u32 values. The payload is
stored row-major in little-endian byte order.

"""
import json
import os
import typing

import numpy as np

from .. import base
from .stack import PredictionStack


__all__ = [
    'FLOAT_MAGIC',
    'INT_MAGIC',
    'load_manifest',
    'read_tensor',
    'write_manifest',
    'write_stack',
    'write_tensor'
]


FLOAT_MAGIC = b'NFT1'
INT_MAGIC = b'NFI1'
MAPS = ('seg', 'labels', 'centroid_offsets', 'motion_offsets')
UNITS = ('pixels', 'normalized')


def write_tensor(path: str, array, integer: bool = False):
    """Writes an array, as int32 if `integer` is set and as float32 otherwise."""
    array = np.ascontiguousarray(array, dtype='<i4' if integer else '<f4')
    with open(path, 'wb') as f:
        f.write(INT_MAGIC if integer else FLOAT_MAGIC)
        f.write(np.array([array.ndim, *array.shape], dtype='<u4').tobytes())
        f.write(array.tobytes())


def read_tensor(path: str, integer: typing.Optional[bool] = None) -> np.ndarray:
    """Reads an array.

    Parameters:
        path: File to read.
        integer: When set, the magic must announce an integer (or float) payload.

    """

    with open(path, 'rb') as f:
        raw = f.read()

    magic = raw[:4]
    if magic not in (FLOAT_MAGIC, INT_MAGIC):
        raise base.BadTensorHeader(f'{path}: unknown magic {magic!r}')
    if integer is not None and (magic == INT_MAGIC) != integer:
        expected = INT_MAGIC if integer else FLOAT_MAGIC
        raise base.BadTensorHeader(f'{path}: expected magic {expected!r}, got {magic!r}')
    if len(raw) < 8:
        raise base.BadTensorHeader(f'{path}: truncated header')

    rank = int(np.frombuffer(raw, dtype='<u4', count=1, offset=4)[0])
    header = 8 + 4 * rank
    if len(raw) < header:
        raise base.BadTensorHeader(f'{path}: truncated header')
    dims = tuple(int(d) for d in np.frombuffer(raw, dtype='<u4', count=rank, offset=8))

    dtype = '<i4' if magic == INT_MAGIC else '<f4'
    expected_size = 4 * int(np.prod(dims, dtype=np.int64))
    if len(raw) - header != expected_size:
        raise base.BadTensorHeader(
            f'{path}: header announces {dims} but the payload holds {len(raw) - header} bytes'
        )

    array = np.frombuffer(raw, dtype=dtype, offset=header).reshape(dims)
    return array.astype(int if magic == INT_MAGIC else float)


def load_manifest(path: str) -> typing.Iterator[typing.Tuple[int, PredictionStack]]:
    """Yields ``(frame, stack)`` pairs in frame order.

    Paths inside the manifest are relative to the manifest's directory. Normalized offsets are
    converted to pixels, x being scaled by the width and y by the height.

    """

    with open(path) as f:
        manifest = json.load(f)

    units = manifest.get('offset_units', 'pixels')
    if units not in UNITS:
        raise base.BadTensorHeader(f'{path}: unknown offset units {units!r}')

    root = os.path.dirname(os.path.abspath(path))
    for entry in sorted(manifest['frames'], key=lambda e: int(e['frame'])):
        missing = [m for m in MAPS if m not in entry]
        if missing:
            raise base.BadTensorHeader(f'{path}: frame {entry["frame"]} lacks {missing}')

        seg = read_tensor(os.path.join(root, entry['seg']), integer=False)
        labels = read_tensor(os.path.join(root, entry['labels']), integer=True)
        offsets = [
            read_tensor(os.path.join(root, entry[m]), integer=False)
            for m in ('centroid_offsets', 'motion_offsets')
        ]

        for name, o in zip(('centroid_offsets', 'motion_offsets'), offsets):
            if o.ndim != 4 or o.shape[1:] != (*labels.shape, 2):
                raise base.BadTensorHeader(
                    f'{path}: frame {entry["frame"]} {name} has shape {o.shape}, '
                    f'incompatible with labels {labels.shape}'
                )
        if seg.shape[-2:] != labels.shape:
            raise base.BadTensorHeader(
                f'{path}: frame {entry["frame"]} seg has shape {seg.shape}, '
                f'incompatible with labels {labels.shape}'
            )

        if units == 'normalized':
            height, width = labels.shape
            offsets = [o * (width, height) for o in offsets]

        yield int(entry['frame']), PredictionStack(seg, offsets[0], offsets[1], labels)


def write_stack(directory: str, frame: int, stack: PredictionStack) -> dict:
    """Writes the maps of a stack and returns the matching manifest entry."""
    entry: typing.Dict[str, typing.Any] = {'frame': int(frame)}
    for name in MAPS:
        filename = f'{name}_{frame:05d}.nft'
        write_tensor(os.path.join(directory, filename), getattr(stack, name),
                     integer=name == 'labels')
        entry[name] = filename
    return entry


def write_manifest(path: str, entries: typing.List[dict], offset_units: str = 'pixels'):
    if offset_units not in UNITS:
        raise base.BadTensorHeader(f'unknown offset units {offset_units!r}')
    with open(path, 'w') as f:
        json.dump({'offset_units': offset_units, 'frames': entries}, f, indent=2)
