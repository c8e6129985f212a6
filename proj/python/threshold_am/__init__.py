"""Threshold-model diffusion dynamics, action models and belief automata."""

import os
from pathlib import Path

_data = Path(__file__).resolve().parent / "data"
if "TAM_DATA_DIR" not in os.environ and (_data / "influence_automaton.json").exists():
    os.environ["TAM_DATA_DIR"] = str(_data)

from ._core import *  # noqa: E402,F401,F403
from ._core import Error, ParseError  # noqa: E402,F401

__version__ = "0.1.0"
