"""Logging setup.

Modules log through ``logging.getLogger(__name__)`` and never touch handlers; applications call
`configure` once.

"""
import logging
import os
import typing


__all__ = ['configure', 'ENV_VAR']


ENV_VAR = 'MITOTRACK_LOG'
FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure(level: typing.Optional[typing.Union[str, int]] = None) -> logging.Logger:
    """Installs a stream handler on the package logger.

    Parameters:
        level: Verbosity. Defaults to the value of the ``MITOTRACK_LOG`` environment variable,
            then to ``WARNING``. Level names and integers are both accepted.

    """

    if level is None:
        level = os.environ.get(ENV_VAR, 'WARNING')
    if isinstance(level, str):
        level = int(level) if level.strip().isdigit() else logging.getLevelName(level.upper())
    if not isinstance(level, int):
        level = logging.WARNING

    logger = logging.getLogger('mitotrack')
    logger.setLevel(level)
    for handler in list(logger.handlers):
        if getattr(handler, '_mitotrack', False):
            logger.removeHandler(handler)

    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(FORMAT))
    handler._mitotrack = True  # type: ignore
    logger.addHandler(handler)
    return logger
