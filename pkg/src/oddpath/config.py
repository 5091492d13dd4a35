"""Guard settings with config-file, environment and CLI layering.

Precedence (low to high): built-in defaults, config file, ODDPATH_*
environment variables, explicit CLI flags.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields

from .errors import InvalidInputError

ENV_PREFIX = "ODDPATH_"


@dataclass
class Guards:
    negedge_guard: int = 24      # exhaustive guesses: 2^|E-|
    mu2_guard: int = 16          # randomized/derandomized: 2*mu
    width_guard: int = 12        # treewidth DP bag size - 1
    disjoint_guard: int = 24     # exact disjoint-path search vertices
    oracle_guard: int = 16       # brute-force enumeration vertices

    @staticmethod
    def load(config_path: str | None = None,
             env: dict[str, str] | None = None,
             overrides: dict[str, int | None] | None = None) -> "Guards":
        g = Guards()
        if config_path:
            try:
                with open(config_path, "r", encoding="utf-8") as fh:
                    data = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise InvalidInputError(f"cannot read config {config_path}: {exc}")
            for f in fields(Guards):
                if f.name in data:
                    setattr(g, f.name, int(data[f.name]))
        env = os.environ if env is None else env
        for f in fields(Guards):
            key = ENV_PREFIX + f.name.upper()
            if key in env:
                try:
                    setattr(g, f.name, int(env[key]))
                except ValueError as exc:
                    raise InvalidInputError(f"bad {key}: {exc}")
        for name, value in (overrides or {}).items():
            if value is not None:
                setattr(g, name, int(value))
        return g
