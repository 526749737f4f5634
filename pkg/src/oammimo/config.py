"""Scenario configuration: a single flat JSON document.

Lengths are in wavelengths unless ``length_unit`` is ``"meter"``, in which
case ``r``, ``R`` and ``d`` are divided by ``wavelength`` on load and the
stored config is in wavelengths.  Sweep grids may be given as explicit lists
or as ``{"start": .., "stop": .., "step": ..}`` (stop inclusive).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .errors import ConfigError


def _grid(start, stop, step):
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


@dataclass
class ScenarioConfig:
    N: int = 4
    M: int = 4
    r: float = 2.0
    R: float = 2.0
    d: float = 20.0
    length_unit: str = "wavelength"
    wavelength: float = 1.0
    mean_aoa: float = math.pi / 6
    std_dev: float = 0.2
    power: float = 1.0
    bandwidth: float = 1e7
    noise_var: float = 1.0
    beta: float = 1.0
    r_over_lambda_grid: list = field(default_factory=lambda: _grid(0.1, 10.0, 0.1))
    snr_db_grid: list = field(default_factory=lambda: _grid(-10.0, 40.0, 2.0))
    fig3_std_dev: float = 0.005
    fig3_cases: list = field(default_factory=lambda: [[4, 4], [4, 8], [8, 8]])
    fig4_sizes: list = field(default_factory=lambda: [4, 8])
    draws: int = 1000
    seed: int = 0
    rank_tol: float = 1e-3
    out_dir: str = "results"
    svg: bool = False

    def __post_init__(self):
        self._validate()

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError("top level must be a JSON object")
        known = {f.name for f in fields(cls)}
        for key in data:
            if key not in known:
                raise ConfigError("unknown key", field=key)
        data = dict(data)
        for key in ("r_over_lambda_grid", "snr_db_grid"):
            if key in data:
                data[key] = _expand_grid(key, data[key])
        cfg = cls(**data)
        if cfg.length_unit == "meter":
            cfg.r, cfg.R, cfg.d = (v / cfg.wavelength for v in (cfg.r, cfg.R, cfg.d))
            cfg.length_unit = "wavelength"
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)

    def hash(self) -> str:
        """Digest of the physics-relevant settings (output location excluded)."""
        payload = {k: v for k, v in self.to_dict().items() if k not in ("out_dir", "svg")}
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def replace(self, **changes) -> "ScenarioConfig":
        return ScenarioConfig.from_dict({**self.to_dict(), **changes})

    def _validate(self):
        for name in ("N", "M", "draws"):
            _require_int(name, getattr(self, name), minimum=1)
        _require_int("seed", self.seed, minimum=0)
        if self.seed >= 2**64:
            raise ConfigError("must fit in an unsigned 64-bit integer", field="seed")
        for name in ("r", "R", "d", "wavelength", "std_dev", "power", "bandwidth",
                     "noise_var", "beta", "fig3_std_dev"):
            _require_positive(name, getattr(self, name))
        if not isinstance(self.mean_aoa, (int, float)) or not math.isfinite(self.mean_aoa):
            raise ConfigError("must be a finite number", field="mean_aoa")
        if not (isinstance(self.rank_tol, (int, float)) and 0 < self.rank_tol < 1):
            raise ConfigError("must lie in (0, 1)", field="rank_tol")
        if self.length_unit not in ("wavelength", "meter"):
            raise ConfigError("must be 'wavelength' or 'meter'", field="length_unit")
        for name in ("r_over_lambda_grid", "snr_db_grid"):
            _require_increasing(name, getattr(self, name))
        if min(self.r_over_lambda_grid) <= 0:
            raise ConfigError("radii must be positive", field="r_over_lambda_grid")
        if not isinstance(self.fig3_cases, list) or not self.fig3_cases:
            raise ConfigError("must be a non-empty list of [N, M] pairs", field="fig3_cases")
        for case in self.fig3_cases:
            if not (isinstance(case, (list, tuple)) and len(case) == 2):
                raise ConfigError(f"bad case {case!r}; expected [N, M]", field="fig3_cases")
            for v in case:
                _require_int("fig3_cases", v, minimum=1)
        if not isinstance(self.fig4_sizes, list) or not self.fig4_sizes:
            raise ConfigError("must be a non-empty list of element counts", field="fig4_sizes")
        for v in self.fig4_sizes:
            _require_int("fig4_sizes", v, minimum=1)
        if not isinstance(self.out_dir, str) or not self.out_dir:
            raise ConfigError("must be a non-empty path", field="out_dir")
        if not isinstance(self.svg, bool):
            raise ConfigError("must be true or false", field="svg")


def _require_int(name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"must be an integer, got {value!r}", field=name)
    if value < minimum:
        raise ConfigError(f"must be >= {minimum}, got {value}", field=name)


def _require_positive(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"must be a number, got {value!r}", field=name)
    if not (math.isfinite(value) and value > 0):
        raise ConfigError(f"must be positive, got {value!r}", field=name)


def _require_increasing(name, values):
    if not isinstance(values, list) or not values:
        raise ConfigError("must be a non-empty list", field=name)
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(f"non-numeric grid value {v!r}", field=name)
    if np.any(np.diff(values) <= 0):
        raise ConfigError("must be strictly increasing", field=name)


def _expand_grid(name, grid):
    if isinstance(grid, dict):
        if set(grid) != {"start", "stop", "step"}:
            raise ConfigError("range must have exactly start, stop, step", field=name)
        start, stop, step = grid["start"], grid["stop"], grid["step"]
        for v in (start, stop, step):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"non-numeric range bound {v!r}", field=name)
        if step <= 0 or stop < start:
            raise ConfigError("range needs step > 0 and stop >= start", field=name)
        return _grid(start, stop, step)
    if isinstance(grid, list):
        return [float(v) if isinstance(v, int) and not isinstance(v, bool) else v for v in grid]
    raise ConfigError("must be a list or a {start, stop, step} range", field=name)


def load_scenario(path) -> ScenarioConfig:
    """Read and validate a scenario file; missing keys take their defaults."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        return ScenarioConfig.from_dict(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def save_scenario(cfg: ScenarioConfig, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(cfg.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
