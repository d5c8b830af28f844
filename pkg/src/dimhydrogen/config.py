"""Run settings: defaults, a flat key = value file, then command-line flags."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from typing import Optional

from .errors import DomainError

CONFIG_ENV = "DIMHYDROGEN_CONFIG"


@dataclass(frozen=True)
class Settings:
    # None means "per-dimension default", see numerov.default_grid
    r_min: Optional[float] = None
    r_max: Optional[float] = None
    n_points: Optional[int] = None
    scan_points: int = 400
    bisection_rel_tol: float = 1e-10
    mc_samples: int = 1_000_000
    seed: int = 20240101


_TYPES = {"r_min": float, "r_max": float, "n_points": int, "scan_points": int,
          "bisection_rel_tol": float, "mc_samples": int, "seed": int}


def parse_config(text, source="<config>"):
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            key, _, value = line.partition(" ")
        key, value = key.strip(), value.strip()
        if key not in _TYPES:
            raise DomainError(key, f"unknown config key ({source}:{lineno})")
        try:
            values[key] = _TYPES[key](value)
        except ValueError:
            raise DomainError(key, f"cannot parse {value!r} ({source}:{lineno})") from None
    return values


def load_settings(path=None, **overrides):
    """Defaults, overlaid by the config file, overlaid by non-None overrides.

    With no explicit path the file named by $DIMHYDROGEN_CONFIG is used if set.
    """
    path = path or os.environ.get(CONFIG_ENV)
    settings = Settings()
    if path:
        with open(path, encoding="utf-8") as fh:
            settings = replace(settings, **parse_config(fh.read(), source=str(path)))
    known = {f.name for f in fields(Settings)}
    return replace(settings, **{k: v for k, v in overrides.items() if k in known and v is not None})
