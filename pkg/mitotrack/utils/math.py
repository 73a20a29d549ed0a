"""Mathematical utility functions (intended for internal purposes)."""
import math

import numpy as np


__all__ = [
    'clamp',
    'neg_log',
    'round_half_away'
]


def clamp(x: float, minimum=0., maximum=1.) -> float:
    """Clamp a number.

    Example:

        >>> clamp(-1)
        0.0

        >>> clamp(.5, maximum=.25)
        0.25

    """
    return float(max(min(x, maximum), minimum))


def neg_log(p: float, eps: float) -> float:
    """Negative logarithm of a probability bounded below by `eps`.

    Example:

        >>> round(neg_log(.5, 1e-12), 6)
        0.693147

        >>> round(neg_log(-.2, 1e-12), 2)
        27.63

    """
    return -math.log(max(p, eps))


def round_half_away(x):
    """Rounds to the nearest integer, ties going away from zero.

    Example:

        >>> round_half_away(np.array([.5, 1.5, -.5, 2.49]))
        array([ 1,  2, -1,  2])

    """
    x = np.asarray(x, dtype=float)
    return (np.sign(x) * np.floor(np.abs(x) + .5)).astype(int)
