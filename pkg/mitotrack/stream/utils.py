import functools
import gzip
import os


def open_filepath(filepath: str, mode: str = 'r', compression='infer'):
    """Opens a text file, compressed with gzip when its name ends with ``.gz``."""

    # Determine the compression from the file extension if "infer" has been specified
    if compression == 'infer':
        _, ext = os.path.splitext(filepath)
        compression = {'.gz': 'gzip'}.get(ext)

    open_func = {
        None: functools.partial(open, newline=''),
        'gzip': functools.partial(gzip.open, newline='')
    }[compression]

    return open_func(filepath, mode + 't')


def fmt_float(x) -> str:
    """Shortest representation that reads back to the same float."""
    return repr(float(x))
