"""Files read and written by the command line: detections, lineages and configurations."""
from .config import dump_config
from .config import load_config
from .detections import DETECTION_FIELDS
from .detections import iter_detections
from .detections import read_detections
from .detections import write_detections
from .lineage import read_lineage
from .lineage import read_res_track
from .lineage import read_tracks
from .lineage import RES_TRACK
from .lineage import TRACK_FIELDS
from .lineage import TRACKS
from .lineage import write_lineage
from .lineage import write_res_track
from .lineage import write_tracks


__all__ = [
    'DETECTION_FIELDS',
    'dump_config',
    'iter_detections',
    'load_config',
    'read_detections',
    'read_lineage',
    'read_res_track',
    'read_tracks',
    'RES_TRACK',
    'TRACK_FIELDS',
    'TRACKS',
    'write_detections',
    'write_lineage',
    'write_res_track',
    'write_tracks'
]
