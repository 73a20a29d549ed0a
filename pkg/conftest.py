import numpy as np

# Doctests were written against numpy 1.x scalar reprs (``True`` rather than ``np.True_``).
if np.lib.NumpyVersion(np.__version__) >= '2.0.0':
    np.set_printoptions(legacy='1.25')
