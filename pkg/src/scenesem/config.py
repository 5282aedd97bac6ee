"""Configuration: every tunable threshold, with validated defaults.

Thresholds live here rather than at call sites so that a run's effective
configuration can be echoed verbatim into every output artifact.
Files may be JSON or TOML; unknown keys are rejected.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import ConfigError

try:
    import tomllib  # py311+
except ModuleNotFoundError:  # pragma: no cover - py310 fallback
    import tomli as tomllib


@dataclass(frozen=True)
class CalculiConfig:
    """Tolerances and bands for the qualitative relation families."""

    eps_rcc: float = 1e-6        # boundary tolerance for ec/dc/po discrimination, meters
    eps_time: float = 1e-6       # interval endpoint equality tolerance, seconds
    theta_same: float = math.pi / 4   # cone half-angle for same/opposite direction
    theta_face: float = math.pi / 4   # cone half-angle for facing towards/away
    d_adjacent: float = 0.15     # qualitative distance: adjacent upper bound, meters
    d_near: float = 1.5          # qualitative distance: near upper bound, meters
    size_ratio: float = 1.25     # equi-sized band [1/ratio, ratio]

    def validate(self) -> None:
        if not (0 < self.eps_rcc < 1):
            raise ConfigError("eps_rcc must be in (0, 1)")
        if self.eps_time <= 0:
            raise ConfigError("eps_time must be positive")
        if not (0 < self.theta_same < math.pi / 2):
            raise ConfigError("theta_same must be in (0, pi/2)")
        if not (0 < self.theta_face < math.pi / 2):
            raise ConfigError("theta_face must be in (0, pi/2)")
        if not (0 < self.d_adjacent < self.d_near):
            raise ConfigError("require 0 < d_adjacent < d_near")
        if self.size_ratio < 1:
            raise ConfigError("size_ratio must be >= 1")


@dataclass(frozen=True)
class PatternConfig:
    """Thresholds for motion-pattern fluents over space-time histories."""

    d_touch: float = 0.05        # contact distance, meters
    eps_d: float = 0.01          # per-step distance tolerance for monotone patterns, meters
    delta_min: float = 0.10      # minimum net distance change for approach/retreat, meters
    v_still: float = 0.05        # stationarity speed bound, m/s
    window: float = 0.3          # sliding window for speed/direction estimates, seconds
    gap_max: float = 0.2         # longest unknown gap bridged inside an interval, seconds
    dur_min: float = 0.1         # minimum event duration, seconds (>= 2 sample periods)
    angle_parallel: float = math.pi / 6   # direction agreement bound for parallel/attached
    v_attach: float = 0.1        # windowed speed difference bound for attached, m/s
    eps_move: float = 0.02       # minimum displacement defining a movement direction, meters
    size_step_tol: float = 0.02  # per-step size tolerance, fraction of current size
    size_change_min: float = 0.10  # net relative size change for growing/shrinking
    curvature_min: float = 0.10  # chord deviation defining a curved track, meters
    eps_cyclic: float = 0.10     # closure radius for cyclic tracks, meters
    z_lift: float = 0.10         # net vertical displacement for ascending/descending, meters
    joint_conf_min: float = 0.3  # skeleton joints below this confidence are dropped

    def validate(self) -> None:
        positive = (
            "d_touch", "eps_d", "delta_min", "v_still", "window", "gap_max",
            "dur_min", "angle_parallel", "v_attach", "eps_move",
            "size_step_tol", "size_change_min", "curvature_min", "eps_cyclic",
            "z_lift",
        )
        for name in positive:
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if not (0 <= self.joint_conf_min <= 1):
            raise ConfigError("joint_conf_min must be in [0, 1]")


@dataclass(frozen=True)
class FloorplanConfig:
    """Point-cloud pipeline parameters (angles in degrees for readability)."""

    k_neighbors: int = 16        # neighborhood size for normals / region growing
    angle_tol_deg: float = 5.0   # normal deviation allowed inside a plane region
    dist_tol: float = 0.02       # point-to-plane distance allowed inside a region, meters
    min_inliers: int = 500       # smallest plane kept
    vertical_tol_deg: float = 10.0   # wall-normal deviation from horizontal
    min_height: float = 1.8      # free-standing wall height, meters
    ceiling_z: float | None = None   # ceiling height; None = estimate from cloud
    ceiling_gap: float = 0.3     # walls reaching within this of the ceiling are kept
    eps_angle_deg: float = 10.0  # DBSCAN radius for wall orientations (mod 180)
    eps_offset: float = 0.25     # DBSCAN radius for parallel-line offsets, meters
    min_pts: int = 1             # DBSCAN core threshold (1 keeps isolated true walls)
    min_coverage: float = 0.6    # perimeter fraction a room candidate must explain
    min_dim: float = 1.0         # smallest acceptable room dimension, meters
    corridor_aspect: float = 3.0  # aspect ratio at or above which a structure is a corridor
    perp_tol_deg: float = 10.0   # deviation from perpendicular allowed between wall families

    def validate(self) -> None:
        if self.k_neighbors < 3:
            raise ConfigError("k_neighbors must be >= 3")
        if self.min_inliers < 3:
            raise ConfigError("min_inliers must be >= 3")
        if self.min_pts < 1:
            raise ConfigError("min_pts must be >= 1")
        for name in ("angle_tol_deg", "dist_tol", "vertical_tol_deg", "min_height",
                     "ceiling_gap", "eps_angle_deg", "eps_offset", "min_dim",
                     "perp_tol_deg"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if not (0 < self.min_coverage <= 1):
            raise ConfigError("min_coverage must be in (0, 1]")
        if self.corridor_aspect < 1:
            raise ConfigError("corridor_aspect must be >= 1")
        if self.ceiling_z is not None and not math.isfinite(self.ceiling_z):
            raise ConfigError("ceiling_z must be finite")


@dataclass(frozen=True)
class Config:
    calculi: CalculiConfig = field(default_factory=CalculiConfig)
    patterns: PatternConfig = field(default_factory=PatternConfig)
    floorplan: FloorplanConfig = field(default_factory=FloorplanConfig)

    def validate(self) -> None:
        self.calculi.validate()
        self.patterns.validate()
        self.floorplan.validate()

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


_SECTIONS = {"calculi": CalculiConfig, "patterns": PatternConfig, "floorplan": FloorplanConfig}


def config_from_dict(data: dict[str, Any]) -> Config:
    """Build a validated Config from nested dicts, rejecting unknown keys."""
    if not isinstance(data, dict):
        raise ConfigError("config root must be a table/object")
    unknown = set(data) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown config section(s): {', '.join(sorted(unknown))}")
    sections: dict[str, Any] = {}
    for name, cls in _SECTIONS.items():
        raw = data.get(name, {})
        if not isinstance(raw, dict):
            raise ConfigError(f"config section '{name}' must be a table/object")
        known = {f.name for f in dataclasses.fields(cls)}
        bad = set(raw) - known
        if bad:
            raise ConfigError(f"unknown key(s) in [{name}]: {', '.join(sorted(bad))}")
        for key, value in raw.items():
            if not isinstance(value, (int, float)) and value is not None:
                raise ConfigError(f"[{name}] {key}: expected a number, got {type(value).__name__}")
        try:
            sections[name] = cls(**raw)
        except TypeError as exc:  # pragma: no cover - shielded by key check
            raise ConfigError(str(exc)) from exc
    cfg = Config(**sections)
    cfg.validate()
    return cfg


def load_config(path: str | Path | None = None) -> Config:
    """Load config from a JSON or TOML file.

    Resolution order: explicit path, SCENESEM_CONFIG env var, built-in defaults.
    """
    if path is None:
        path = os.environ.get("SCENESEM_CONFIG") or None
    if path is None:
        cfg = Config()
        cfg.validate()
        return cfg
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {p}: {exc}") from exc
    if p.suffix.lower() == ".toml":
        try:
            data = tomllib.loads(raw.decode("utf-8"))
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML in {p}: {exc}") from exc
    else:
        try:
            data = json.loads(raw.decode("utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {p}: {exc}") from exc
    return config_from_dict(data)
