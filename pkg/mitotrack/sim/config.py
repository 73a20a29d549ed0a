from .. import base


__all__ = ['SimConfig']


class SimConfig(base.Config):
    """Parameters of a synthetic colony.

    Parameters:
        width: Field width in pixels.
        height: Field height in pixels.
        n_frames: Sequence length.
        n_init: Number of cells at the first frame.
        motion_sigma: Per-axis standard deviation of a cell's step between two frames.
        lifetime_alpha: Shape of the Erlang law of cell cycle durations, in frames.
        lifetime_rate: Rate of the Erlang law of cell cycle durations.
        p_detect_sim: Probability that a cell is detected.
        clutter_rate: Expected number of false detections per frame.
        meas_sigma: Per-axis standard deviation of the centroid measurement noise.
        daughter_sep: Distance between two daughters at their birth.
        cell_radius: Cell radius, which sets the area of the detections.
        seed: Random seed.

    Example:

        >>> from mitotrack import sim

        >>> sim.SimConfig(n_frames=50).n_frames
        50

    """

    def __init__(self, width=256, height=256, n_frames=100, n_init=10, motion_sigma=2.,
                 lifetime_alpha=50, lifetime_rate=.5, p_detect_sim=.95, clutter_rate=.5,
                 meas_sigma=.5, daughter_sep=8., cell_radius=5., seed=0):

        for name, x in (('width', width), ('height', height), ('n_frames', n_frames),
                        ('n_init', n_init), ('lifetime_rate', lifetime_rate),
                        ('cell_radius', cell_radius)):
            if not x > 0:
                raise base.InvalidConfig(f'{name} must be positive, got {x}')
        for name, x in (('motion_sigma', motion_sigma), ('clutter_rate', clutter_rate),
                        ('meas_sigma', meas_sigma), ('daughter_sep', daughter_sep)):
            if not x >= 0:
                raise base.InvalidConfig(f'{name} must be non-negative, got {x}')
        if int(lifetime_alpha) != lifetime_alpha or lifetime_alpha < 1:
            raise base.InvalidConfig('lifetime_alpha must be a positive integer')
        if not 0 < p_detect_sim <= 1:
            raise base.InvalidConfig('p_detect_sim must lie in (0, 1]')

        self.width = width
        self.height = height
        self.n_frames = int(n_frames)
        self.n_init = int(n_init)
        self.motion_sigma = motion_sigma
        self.lifetime_alpha = int(lifetime_alpha)
        self.lifetime_rate = lifetime_rate
        self.p_detect_sim = p_detect_sim
        self.clutter_rate = clutter_rate
        self.meas_sigma = meas_sigma
        self.daughter_sep = daughter_sep
        self.cell_radius = cell_radius
        self.seed = int(seed)
