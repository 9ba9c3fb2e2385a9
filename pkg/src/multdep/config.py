"""JSON experiment configs.

Example::

    {
      "polynomials": ["x0", "x0"],
      "m": 1,
      "H": [50, 100, 200],
      "budget": 100000000,
      "quantity": "count_NF",
      "assertions": {"ncc": true},
      "output": {"json": "out/run.json", "csv": "out/run.csv"}
    }

Only ``polynomials`` and ``H`` are required. ``n`` may be given and must then
match the number of polynomials.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .counting import DEFAULT_BUDGET
from .errors import DomainError
from .poly import PolySystem, parse_poly

QUANTITIES = ("count_NF", "count_NF_star", "hypersurface")

_KNOWN_KEYS = {
    "polynomials", "m", "n", "H", "budget", "threads", "method", "quantity",
    "target", "target_exponent", "search_bound", "star", "assertions", "output",
    "min_H", "description",
}


class ConfigError(DomainError):
    pass


@dataclass
class ExperimentConfig:
    polynomials: list[str]
    m: int
    H: list[int]
    budget: int | None = DEFAULT_BUDGET
    threads: int = 1
    method: str = "rank"
    quantity: str = "count_NF"
    target: int = 0
    target_exponent: float | None = None
    search_bound: int = 20
    star: bool = False
    min_H: int = 10
    assertions: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    @property
    def n(self):
        return len(self.polynomials)

    def system(self) -> PolySystem:
        return PolySystem(tuple(parse_poly(p, self.m) for p in self.polynomials))

    def as_dict(self):
        return {
            "polynomials": list(self.polynomials),
            "m": self.m,
            "n": self.n,
            "H": list(self.H),
            "budget": self.budget,
            "threads": self.threads,
            "method": self.method,
            "quantity": self.quantity,
            "target": self.target,
            "target_exponent": self.target_exponent,
            "search_bound": self.search_bound,
            "star": self.star,
            "min_H": self.min_H,
            "assertions": dict(self.assertions),
        }


def _int(value, name, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def config_from_dict(raw: dict) -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    polys = raw.get("polynomials")
    if not polys or not isinstance(polys, list) or not all(isinstance(p, str) for p in polys):
        raise ConfigError("'polynomials' must be a nonempty list of strings")
    if "n" in raw and _int(raw["n"], "n", 1) != len(polys):
        raise ConfigError(f"n = {raw['n']} but {len(polys)} polynomials were given")
    if "H" not in raw:
        raise ConfigError("'H' is required")
    H = raw["H"] if isinstance(raw["H"], list) else [raw["H"]]
    if not H:
        raise ConfigError("'H' must not be empty")
    H = [_int(h, "H", 0) for h in H]
    budget = raw.get("budget", DEFAULT_BUDGET)
    if budget is not None:
        budget = _int(budget, "budget", 1)
    quantity = raw.get("quantity", "count_NF")
    if quantity not in QUANTITIES:
        raise ConfigError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")
    method = raw.get("method", "rank")
    if method not in ("rank", "direct"):
        raise ConfigError(f"method must be 'rank' or 'direct', got {method!r}")
    target_exponent = raw.get("target_exponent")
    if target_exponent is not None and not isinstance(target_exponent, (int, float)):
        raise ConfigError("target_exponent must be a number")
    cfg = ExperimentConfig(
        polynomials=list(polys),
        m=_int(raw.get("m", 1), "m", 1),
        H=H,
        budget=budget,
        threads=_int(raw.get("threads", 1), "threads", 1),
        method=method,
        quantity=quantity,
        target=_int(raw.get("target", 0), "target"),
        target_exponent=target_exponent,
        search_bound=_int(raw.get("search_bound", 20), "search_bound", 1),
        star=bool(raw.get("star", False)),
        min_H=_int(raw.get("min_H", 10), "min_H", 0),
        assertions=dict(raw.get("assertions", {})),
        output=dict(raw.get("output", {})),
    )
    cfg.system()  # surface parse errors at load time
    return cfg


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return config_from_dict(raw)
