"""Rod force analysis and cross-section design as QUBO problems."""

import json as _json
import os as _os

from . import _core
from ._core import *  # noqa: F401,F403

__all__ = [name for name in dir(_core) if not name.startswith("_")]


def _config_text(config):
    if isinstance(config, (str, _os.PathLike)) and _os.path.exists(config):
        with open(config) as fh:
            return fh.read()
    if isinstance(config, dict):
        return _json.dumps(config)
    return str(config)


def formulate(config):
    """Summary of the reduced QUBO for a config (path, dict or JSON text)."""
    return _json.loads(_core.formulate(_config_text(config)))


def solve(config, out=None):
    """Solves a config and returns the decoded solution summary."""
    return _json.loads(_core.solve(_config_text(config), out))


def verify(config_path):
    return _json.loads(_core.verify(_os.fspath(config_path)))


__all__ += ["formulate", "solve", "verify"]
