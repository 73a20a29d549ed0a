import json
import typing

from .. import base


__all__ = ['dump_config', 'load_config']


def load_config(path: str, cls: typing.Type[base.Config] = base.TrackerConfig) -> base.Config:
    """Reads a JSON configuration, refusing unknown keys."""
    try:
        with open(path) as f:
            params = json.load(f)
    except json.JSONDecodeError as e:
        raise base.InvalidConfig(f'{path} is not valid JSON: {e}') from e
    if not isinstance(params, dict):
        raise base.InvalidConfig(f'{path} must hold a JSON object')
    return cls.from_dict(params)


def dump_config(config: base.Config, path: str):
    with open(path, 'w') as f:
        json.dump(config.to_dict(), f, indent=2, sort_keys=True)
        f.write('\n')
