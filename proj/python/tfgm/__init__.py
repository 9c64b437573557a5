"""Separation of multicomponent signals via time-frequency pixel graphs.

The heavy lifting lives in the compiled `_core` module; this wrapper adds
small conveniences for working with configuration as dictionaries.
"""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, method_preset_json, run_method  # noqa: F401


def preset(name="A"):
    """Configuration of a preset pipeline (A..E) as a dictionary."""
    return _json.loads(method_preset_json(name))


def scenario_catalog():
    """Builtin benchmark scenarios as a dictionary."""
    from ._core import scenario_catalog_json

    return _json.loads(scenario_catalog_json())


def run(x, config="A"):
    """Run a separation pipeline on a signal.

    `config` may be a preset letter ("A".."E"), a configuration dictionary,
    or raw JSON text.
    """
    if isinstance(config, dict):
        text = _json.dumps(config)
    elif isinstance(config, str) and not config.lstrip().startswith("{"):
        text = method_preset_json(config)
    else:
        text = config
    return run_method(x, text)
